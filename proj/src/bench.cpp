#include "kec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "kec/greedy.hpp"
#include "kec/oracles.hpp"
#include "kec/pipelines.hpp"

namespace kec {

using nlohmann::ordered_json;

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "greedy") return Algo::Greedy;
  if (name == "matcho") return Algo::MatchO;
  if (name == "matcha") return Algo::MatchA;
  if (name == "matcho-bip") return Algo::MatchOBip;
  if (name == "matcha-bip") return Algo::MatchABip;
  return std::nullopt;
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Greedy: return "greedy";
    case Algo::MatchO: return "matcho";
    case Algo::MatchA: return "matcha";
    case Algo::MatchOBip: return "matcho-bip";
    case Algo::MatchABip: return "matcha-bip";
  }
  return "?";
}

namespace {

int parse_log_level() {
  const char* raw = std::getenv("KEC_LOG");
  if (!raw) return 1;
  std::string s(raw);
  if (s == "quiet" || s == "0") return 0;
  if (s == "info" || s == "1" || s.empty()) return 1;
  if (s == "debug" || s == "2") return 2;
  return 1;
}

}  // namespace

int log_level() {
  static const int lvl = parse_log_level();
  return lvl;
}

void log_error(const std::string& msg) {
  std::cerr << "[kec] error: " << msg << "\n";
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[kec] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[kec] debug: " << msg << "\n";
}

namespace {

// 64-bit splitmix-style bounded draw; std::uniform_int_distribution is
// implementation-defined, and generated streams must be stable bytes
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Stream generate_stream(const GenConfig& cfg) {
  if (cfg.n < 2) throw ContractViolation("streams need at least two vertices");
  if (!(cfg.p_delete >= 0.0 && cfg.p_delete <= 1.0))
    throw ContractViolation("p_delete must lie in [0, 1]");
  if (cfg.k < 1) throw ContractViolation("k must be >= 1");
  if (cfg.steps < 0) throw ContractViolation("steps must be >= 0");
  if (cfg.max_edges && *cfg.max_edges < 1)
    throw ContractViolation("max_edges must be >= 1");

  VertexId n = cfg.n;
  VertexId left = (n + 1) / 2;  // bipartite split point
  std::uint64_t total_pairs =
      cfg.bipartite
          ? static_cast<std::uint64_t>(left) * (n - left)
          : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (total_pairs == 0)
    throw ContractViolation("vertex split leaves no insertable pair");

  std::mt19937_64 rng(cfg.seed);
  std::unordered_set<Edge, EdgeHash> present;
  std::vector<Edge> pool;  // present edges, for uniform delete picks
  std::unordered_map<Edge, std::size_t, EdgeHash> pos;

  auto draw_vertex_pair = [&]() {
    if (cfg.bipartite) {
      VertexId u = static_cast<VertexId>(bounded(rng, left));
      VertexId v = left + static_cast<VertexId>(bounded(rng, n - left));
      return Edge(u, v);
    }
    for (;;) {
      VertexId u = static_cast<VertexId>(bounded(rng, n));
      VertexId v = static_cast<VertexId>(bounded(rng, n));
      if (u != v) return Edge(u, v);
    }
  };

  Stream out;
  out.n = n;
  out.k = cfg.k;
  for (long long step = 0; step < cfg.steps; ++step) {
    bool at_cap = present.size() == total_pairs ||
                  (cfg.max_edges && present.size() >= *cfg.max_edges);
    bool do_delete;
    if (present.empty())
      do_delete = false;
    else if (at_cap)
      do_delete = true;
    else
      do_delete = unit_real(rng) < cfg.p_delete;

    Edge e;
    if (do_delete) {
      std::size_t i = bounded(rng, pool.size());
      e = pool[i];
      pool[i] = pool.back();
      pos[pool[i]] = i;
      pool.pop_back();
      pos.erase(e);
      present.erase(e);
      out.events.push_back({UpdateKind::Delete, e});
    } else {
      bool found = false;
      for (int attempt = 0; attempt < 64 && !found; ++attempt) {
        e = draw_vertex_pair();
        found = !present.count(e);
      }
      if (!found) {
        // dense region: enumerate the complement once and pick uniformly
        std::vector<Edge> absent;
        absent.reserve(total_pairs - present.size());
        if (cfg.bipartite) {
          for (VertexId u = 0; u < left; ++u)
            for (VertexId v = left; v < n; ++v)
              if (!present.count(Edge(u, v))) absent.push_back(Edge(u, v));
        } else {
          for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
              if (!present.count(Edge(u, v))) absent.push_back(Edge(u, v));
        }
        e = absent[bounded(rng, absent.size())];
      }
      present.insert(e);
      pos[e] = pool.size();
      pool.push_back(e);
      out.events.push_back({UpdateKind::Insert, e});
    }
  }
  return out;
}

namespace {

bool is_matcha(Algo a) { return a == Algo::MatchA || a == Algo::MatchABip; }

PipelineVariant variant_of(Algo a) {
  switch (a) {
    case Algo::MatchO: return PipelineVariant::MatchO;
    case Algo::MatchA: return PipelineVariant::MatchA;
    case Algo::MatchOBip: return PipelineVariant::BipartiteO;
    case Algo::MatchABip: return PipelineVariant::BipartiteA;
    default: throw ContractViolation("greedy has no pipeline variant");
  }
}

// reduced p*/p as text; "inf" when p = 0 < p*, "1" when p* = 0 (then p = 0)
std::string ratio_string(long long p_star, long long p) {
  if (p_star == 0) return "1";
  if (p == 0) return "inf";
  long long g = std::gcd(p_star, p);
  long long num = p_star / g, den = p / g;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// one replayed state: the greedy maintainer or one of the pipelines
class Driver {
 public:
  Driver(Algo algo, VertexId n, int k, double epsilon, std::uint64_t seed) {
    if (algo == Algo::Greedy)
      greedy_ = std::make_unique<GreedyState>(n, k);
    else
      pipe_ = std::make_unique<Pipeline>(variant_of(algo), n, k, epsilon,
                                         seed);
  }

  void apply(const UpdateEvent& ev) {
    if (greedy_) {
      bool was_colored = ev.kind == UpdateKind::Delete &&
                         greedy_->coloring().is_colored(ev.edge);
      int before = greedy_->coloring().colored_count();
      greedy_->apply(ev);
      int after = greedy_->coloring().colored_count();
      // repairs are visible as the colored count not dropping by the full
      // deleted edge
      recolored_ = ev.kind == UpdateKind::Delete &&
                   after != before - (was_colored ? 1 : 0);
    } else {
      pipe_->apply(ev);
      recolored_ = pipe_->last_apply_recolored();
    }
  }

  const DynamicGraph& graph() const {
    return greedy_ ? greedy_->graph() : pipe_->graph();
  }
  const PartialColoring& coloring() const {
    return greedy_ ? greedy_->coloring() : pipe_->coloring();
  }
  bool recolored() const { return recolored_; }
  long long matcher_size() const {
    // the colored edges of a proper <= k coloring form a k-matching, so the
    // greedy maintainer reports those
    return greedy_ ? greedy_->coloring().colored_count()
                   : pipe_->matcher_size();
  }
  std::optional<std::size_t> sparsifier_size() const {
    return greedy_ ? std::nullopt : pipe_->sparsifier_size();
  }

  GreedyState* greedy() { return greedy_.get(); }
  Pipeline* pipeline() { return pipe_.get(); }

 private:
  std::unique_ptr<GreedyState> greedy_;
  std::unique_ptr<Pipeline> pipe_;
  bool recolored_ = false;
};

// shared by run/verify: load the stream and screen the config
std::optional<std::string> screen_config(const RunConfig& cfg, int k) {
  if (k < 1) return "k must be >= 1";
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon))
    return "epsilon must be positive and finite";
  if (is_matcha(cfg.algo) && !(cfg.epsilon < 0.5))
    return "epsilon must lie in (0, 1/2) for the matcha pipelines";
  return std::nullopt;
}

}  // namespace

int cmd_run(const RunConfig& cfg) {
  Stream stream;
  try {
    stream = load_stream(cfg.stream_path);
  } catch (const StreamParseError& ex) {
    log_error("stream line " + std::to_string(ex.line) + ": " + ex.what());
    return 2;
  } catch (const std::exception& ex) {
    log_error(ex.what());
    return 2;
  }
  int k = cfg.k.value_or(stream.k);
  if (auto err = screen_config(cfg, k)) {
    log_error(*err);
    return 2;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.metrics_path.empty() && cfg.metrics_path != "-") {
    file.open(cfg.metrics_path, std::ios::binary);
    if (!file) {
      log_error("cannot open metrics path " + cfg.metrics_path);
      return 2;
    }
    out = &file;
  }

  Driver drv(cfg.algo, stream.n, k, cfg.epsilon, cfg.seed);
  bool oracle_warned = false;
  long long step = 0;
  for (const auto& ev : stream.events) {
    ++step;
    auto t0 = std::chrono::steady_clock::now();
    try {
      drv.apply(ev);
    } catch (const std::exception& ex) {
      log_error("step " + std::to_string(step) + ": " + ex.what());
      return 1;
    }
    long long elapsed = 0;
    if (cfg.timing)
      elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

    ordered_json j;
    j["step"] = step;
    j["op"] = ev.kind == UpdateKind::Insert ? "insert" : "delete";
    long long colored = drv.coloring().colored_count();
    j["colored"] = colored;
    j["recolored"] = drv.recolored();
    j["matcher_size"] = drv.matcher_size();
    if (auto s = drv.sparsifier_size()) j["sparsifier_size"] = *s;
    if (cfg.oracle) {
      try {
        OracleResult res = brute_k_edge_coloring(drv.graph(), k);
        j["oracle_p_star"] = res.value;
        j["ratio"] = ratio_string(res.value, colored);
      } catch (const OracleRefused&) {
        if (!oracle_warned) {
          log_info("warning: oracle refused at step " + std::to_string(step) +
                   " (m=" + std::to_string(drv.graph().num_edges()) +
                   "); oracle fields omitted where too large");
          oracle_warned = true;
        }
      }
    }
    j["elapsed_ns"] = elapsed;
    *out << j.dump() << "\n";
  }
  return 0;
}

int cmd_gen(const GenConfig& cfg, const std::string& out_path) {
  Stream s;
  try {
    s = generate_stream(cfg);
  } catch (const std::exception& ex) {
    log_error(ex.what());
    return 2;
  }
  std::string text = format_stream(s);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    log_error("cannot open output path " + out_path);
    return 2;
  }
  file << text;
  return 0;
}

int cmd_oracle(const std::string& stream_path, std::optional<int> k) {
  Stream stream;
  try {
    stream = load_stream(stream_path);
  } catch (const StreamParseError& ex) {
    log_error("stream line " + std::to_string(ex.line) + ": " + ex.what());
    return 2;
  } catch (const std::exception& ex) {
    log_error(ex.what());
    return 2;
  }
  int kk = k.value_or(stream.k);
  if (kk < 1) {
    log_error("k must be >= 1");
    return 2;
  }
  DynamicGraph g(stream.n);
  for (const auto& ev : stream.events) g.apply(ev);

  ordered_json j;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["k"] = kk;
  int refused = 0;
  try {
    j["p_star"] = brute_k_edge_coloring(g, kk).value;
  } catch (const OracleRefused& ex) {
    ++refused;
    log_info(std::string("coloring oracle: ") + ex.what());
  }
  try {
    j["s_star"] = brute_k_matching(g, kk).value;
  } catch (const OracleRefused& ex) {
    ++refused;
    log_info(std::string("matching oracle: ") + ex.what());
  }
  try {
    long long twice = brute_fractional(g, BVector::uniform(g.num_vertices(), kk)).value;
    j["frac_opt"] = static_cast<double>(twice) / 2.0;
  } catch (const OracleRefused& ex) {
    ++refused;
    log_info(std::string("fractional oracle: ") + ex.what());
  }
  if (refused == 3) {
    log_error("instance too large for every oracle");
    return 3;
  }
  std::cout << j.dump() << "\n";
  return 0;
}

namespace {

struct VerifyFailure {
  std::string what;
};

[[noreturn]] void violate(const std::string& what) {
  throw VerifyFailure{what};
}

void check(bool ok, const std::string& what) {
  if (!ok) violate(what);
}

// everything the verifier tracks on its own, next to the live state
struct VerifyModel {
  long long expected_colored = 0;
  int expected_remaining = 1;
  long long twice_at_rebuild = 0;
  long long updates_since_rebuild = 0;
};

void verify_greedy_step(const GreedyState& st) {
  const DynamicGraph& g = st.graph();
  const PartialColoring& f = st.coloring();
  for (Edge e : g.edge_list()) {
    if (f.is_colored(e)) continue;
    check(f.common_free_color(e.u, e.v) == kNoColor,
          "maximality broken: uncolored edge (" + std::to_string(e.u) + "," +
              std::to_string(e.v) + ") has a common free color");
  }
}

void verify_matcher_step(const Pipeline& pipe, int k) {
  const DynamicGraph& g = pipe.graph();
  const KMatching& m = pipe.maximal()->matching();
  std::vector<int> load(g.num_vertices(), 0);
  for (Edge e : m.edges()) {
    check(g.has_edge(e), "matching contains an absent edge");
    ++load[e.u];
    ++load[e.v];
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    check(load[v] == m.load(v), "matching load book-keeping drifted");
    check(load[v] <= k, "matching violates the degree cap");
  }
  for (Edge e : g.edge_list()) {
    if (m.contains(e)) continue;
    check(load[e.u] == k || load[e.v] == k,
          "matching not maximal: edge (" + std::to_string(e.u) + "," +
              std::to_string(e.v) + ") fits");
  }
}

void verify_fractional_step(const Pipeline& pipe, int k, VerifyModel& model) {
  const FractionalMatcher& fm = *pipe.fractional();
  const Sparsifier& sp = *pipe.sparsifier();
  const DynamicGraph& g = pipe.graph();
  const FractionalAssignment& x = fm.assignment();

  std::string why;
  check(verify_feasible(x, BVector::uniform(g.num_vertices(), k), g, &why),
        "fractional assignment infeasible: " + why);
  check(sp.validate(&why), "sparsifier indexes broken: " + why);

  // the sparsifier must track exactly the assignment's support, value for
  // value (every half-integral value sits above the bucket floor here)
  std::size_t expected_tracked = 0;
  long long twice_tracked = 0;
  for (const auto& [e, t] : x.support()) {
    double xe = t / 2.0;
    auto want = sp.bucket_index(xe);
    if (!want) continue;
    ++expected_tracked;
    twice_tracked += t;
    check(sp.bucket_of(e) == *want,
          "sparsifier tracks an edge in the wrong bucket");
  }
  check(expected_tracked == sp.tracked_edges(),
        "sparsifier tracks a different edge set than the assignment");

  if (fm.last_apply_rebuilt()) {
    model.twice_at_rebuild = x.twice_value();
    model.updates_since_rebuild = 0;
    double eps = fm.epsilon();
    check(twice_tracked / 2.0 >=
              x.twice_value() / 2.0 - eps * eps - 1e-12,
          "tracked value tail exceeds eps^2 right after a rebuild");
  } else {
    ++model.updates_since_rebuild;
  }
  check(x.twice_value() >=
            model.twice_at_rebuild - 2 * model.updates_since_rebuild,
        "fractional value decayed faster than one unit per update");
}

void verify_pipeline_step(Pipeline& pipe, int k, bool deleted_colored_edge,
                          VerifyModel& model) {
  const PartialColoring& f = pipe.coloring();

  // between recolorings the colored count moves only when a colored edge is
  // deleted; a recoloring sets a fresh baseline
  if (pipe.last_apply_recolored()) {
    model.expected_colored = f.colored_count();
  } else if (deleted_colored_edge) {
    --model.expected_colored;
  }
  check(f.colored_count() == model.expected_colored,
        "colored count diverged from the between-recolors maintenance rule");

  // budget automaton: a recolor fires exactly when the budget runs out
  bool should_recolor = model.expected_remaining == 1;
  check(pipe.last_apply_recolored() == should_recolor,
        should_recolor ? "budget hit zero without a recoloring"
                       : "recoloring fired before the budget ran out");
  const AmortizationBudget& budget = pipe.budget();
  if (pipe.last_apply_recolored()) {
    check(budget.colored_at_reset == f.colored_count(),
          "budget baseline is not the fresh colored count");
    int want = std::max(
        1, static_cast<int>(std::floor(pipe.epsilon() * f.colored_count() +
                                       1e-9)));
    check(budget.remaining == want, "budget reset to the wrong allowance");
    model.expected_remaining = want;
  } else {
    --model.expected_remaining;
    check(budget.remaining == model.expected_remaining,
          "budget decrement drifted");
  }
  check(budget.remaining >= 1, "budget left below one");

  // colored edges come from the installed matching
  std::unordered_set<Edge, EdgeHash> in_matching(pipe.last_matching().begin(),
                                                 pipe.last_matching().end());
  for (const auto& [e, c] : f.assignment())
    check(in_matching.count(e) != 0,
          "a colored edge is not part of the installed matching");

  if (pipe.last_apply_recolored()) {
    std::size_t msize = pipe.last_matching().size();
    bool bip = pipe.variant() == PipelineVariant::BipartiteO ||
               pipe.variant() == PipelineVariant::BipartiteA;
    if (bip) {
      check(static_cast<std::size_t>(f.colored_count()) == msize,
            "bipartite recoloring failed to color the whole matching");
    } else {
      long long kept_floor =
          (static_cast<long long>(k) * msize + k) / (k + 1);  // ceil(k*m/(k+1))
      check(f.colored_count() >= kept_floor,
            "recoloring kept fewer edges than the discard bound allows");
      // the recoloring is deterministic given the matching, so recompute it
      DynamicGraph sub(pipe.graph().num_vertices());
      for (Edge e : pipe.last_matching()) sub.insert_edge(e);
      PartialColoring redo = discard_least_used(vizing_color(sub), k);
      check(redo.colored_count() == f.colored_count(),
            "recoloring kept a different count than its recomputation");
    }
  }
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::optional<long long> fault_step) {
  Stream stream;
  try {
    stream = load_stream(cfg.stream_path);
  } catch (const StreamParseError& ex) {
    log_error("stream line " + std::to_string(ex.line) + ": " + ex.what());
    return 2;
  } catch (const std::exception& ex) {
    log_error(ex.what());
    return 2;
  }
  int k = cfg.k.value_or(stream.k);
  if (auto err = screen_config(cfg, k)) {
    log_error(*err);
    return 2;
  }
  if (fault_step && cfg.algo == Algo::Greedy) {
    log_error("fault injection needs a pipeline algo");
    return 2;
  }

  Driver drv(cfg.algo, stream.n, k, cfg.epsilon, cfg.seed);
  VerifyModel model;
  long long step = 0;
  for (const auto& ev : stream.events) {
    ++step;
    bool deleted_colored = ev.kind == UpdateKind::Delete &&
                           drv.coloring().is_colored(ev.edge);
    try {
      drv.apply(ev);
      if (fault_step && *fault_step == step)
        drv.pipeline()->debug_drop_one_colored();

      std::string why;
      check(drv.coloring().palette() == k, "output palette drifted from k");
      check(drv.coloring().validate(&why), "coloring indexes broken: " + why);
      check(verify_proper(drv.coloring(), drv.graph(), &why),
            "coloring not proper: " + why);

      if (auto* g = drv.greedy()) {
        verify_greedy_step(*g);
      } else {
        Pipeline& pipe = *drv.pipeline();
        verify_pipeline_step(pipe, k, deleted_colored, model);
        if (pipe.maximal())
          verify_matcher_step(pipe, k);
        else
          verify_fractional_step(pipe, k, model);
      }
    } catch (const VerifyFailure& vf) {
      log_error("verification failed at step " + std::to_string(step) + ": " +
                vf.what);
      return 1;
    } catch (const std::exception& ex) {
      log_error("verification failed at step " + std::to_string(step) + ": " +
                ex.what());
      return 1;
    }
  }
  log_info("verify passed: " + std::to_string(step) + " steps, algo " +
           algo_name(cfg.algo) + ", k " + std::to_string(k));
  return 0;
}

}  // namespace kec
