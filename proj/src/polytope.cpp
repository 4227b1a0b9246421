#include "kec/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

namespace kec {

BVector::BVector(std::vector<int> caps) : b_(std::move(caps)) {
  if (b_.empty()) {
    min_b_ = 1;
    return;
  }
  min_b_ = *std::min_element(b_.begin(), b_.end());
  if (min_b_ < 1) throw ContractViolation("capacities must be >= 1");
}

BVector BVector::uniform(VertexId n, int k) {
  if (k < 1) throw ContractViolation("capacities must be >= 1");
  return BVector(std::vector<int>(n, k));
}

int FractionalAssignment::twice(Edge e) const {
  auto it = twice_.find(e);
  return it == twice_.end() ? 0 : it->second;
}

void FractionalAssignment::set_twice(Edge e, int t) {
  if (t < 0 || t > 2)
    throw ContractViolation("doubled edge value must be 0, 1, or 2");
  if (e.v >= twice_load_.size())
    throw ContractViolation("edge endpoint out of range");
  int old = twice(e);
  if (old == t) return;
  if (t == 0)
    twice_.erase(e);
  else
    twice_[e] = t;
  twice_load_[e.u] += t - old;
  twice_load_[e.v] += t - old;
  twice_value_ += t - old;
}

bool verify_feasible(const FractionalAssignment& x, const BVector& b,
                     const DynamicGraph& g, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (x.num_vertices() != g.num_vertices() || b.size() != g.num_vertices())
    return fail("size mismatch");
  for (const auto& [e, t] : x.support()) {
    if (t < 1 || t > 2) return fail("entry not half-integral");
    if (!g.has_edge(e))
      return fail("support edge (" + std::to_string(e.u) + "," +
                  std::to_string(e.v) + ") not in graph");
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (x.twice_load(v) > 2 * b[v])
      return fail("load at vertex " + std::to_string(v) + " exceeds capacity");
  return true;
}

std::optional<std::vector<std::uint8_t>> try_bipartition(
    const DynamicGraph& g) {
  std::vector<std::uint8_t> side(g.num_vertices(), 2);
  std::deque<VertexId> queue;
  for (VertexId root = 0; root < g.num_vertices(); ++root) {
    if (side[root] != 2) continue;
    side[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (VertexId v : g.neighbors(u)) {
        if (side[v] == 2) {
          side[v] = side[u] ^ 1;
          queue.push_back(v);
        } else if (side[v] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

DoubleCover double_cover(const DynamicGraph& g, const BVector& b) {
  if (b.size() != g.num_vertices())
    throw ContractViolation("capacity vector size mismatch");
  VertexId n = g.num_vertices();
  DynamicGraph cover(2 * n);
  for (Edge e : g.edge_list()) {
    cover.insert_edge(Edge(e.u, n + e.v));
    cover.insert_edge(Edge(e.v, n + e.u));
  }
  std::vector<int> caps(2 * n);
  for (VertexId v = 0; v < n; ++v) caps[v] = caps[n + v] = b[v];
  return DoubleCover{std::move(cover), BVector(std::move(caps))};
}

namespace {

// Dinic max flow, integer capacities. Arcs are stored in pairs, rev = i ^ 1.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n), level_(n), it_(n) {}

  int add_arc(int from, int to, int cap) {
    int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(cap);
    head_[from].push_back(id);
    to_.push_back(from);
    cap_.push_back(0);
    head_[to].push_back(id + 1);
    return id;
  }

  int residual(int arc) const { return cap_[arc]; }

  long long run(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (long long pushed = dfs(s, t, std::numeric_limits<int>::max()))
        total += pushed;
    }
    return total;
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> q{s};
    level_[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int id : head_[u])
        if (cap_[id] > 0 && level_[to_[id]] < 0) {
          level_[to_[id]] = level_[u] + 1;
          q.push_back(to_[id]);
        }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int limit) {
    if (u == t || limit == 0) return limit;
    for (std::size_t& i = it_[u]; i < head_[u].size(); ++i) {
      int id = head_[u][i];
      int v = to_[id];
      if (cap_[id] <= 0 || level_[v] != level_[u] + 1) continue;
      int pushed = dfs(v, t, std::min(limit, cap_[id]));
      if (pushed > 0) {
        cap_[id] -= pushed;
        cap_[id ^ 1] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> head_;
  std::vector<int> to_, cap_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace

std::vector<Edge> max_bipartite_bmatching(const DynamicGraph& g,
                                          const BVector& b) {
  if (b.size() != g.num_vertices())
    throw ContractViolation("capacity vector size mismatch");
  auto side = try_bipartition(g);
  if (!side) throw ContractViolation("graph is not bipartite");

  VertexId n = g.num_vertices();
  int s = static_cast<int>(n), t = static_cast<int>(n) + 1;
  MaxFlow flow(static_cast<int>(n) + 2);
  for (VertexId v = 0; v < n; ++v) {
    if ((*side)[v] == 0)
      flow.add_arc(s, static_cast<int>(v), b[v]);
    else
      flow.add_arc(static_cast<int>(v), t, b[v]);
  }
  auto edges = g.edge_list();
  std::vector<int> arc_of(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e = edges[i];
    VertexId from = (*side)[e.u] == 0 ? e.u : e.v;
    VertexId to = (*side)[e.u] == 0 ? e.v : e.u;
    arc_of[i] = flow.add_arc(static_cast<int>(from), static_cast<int>(to), 1);
  }
  flow.run(s, t);

  std::vector<Edge> matched;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (flow.residual(arc_of[i]) == 0) matched.push_back(edges[i]);
  return matched;
}

FractionalAssignment half_integral_optimum(const DynamicGraph& g,
                                           const BVector& b) {
  if (b.size() != g.num_vertices())
    throw ContractViolation("capacity vector size mismatch");
  FractionalAssignment x(g.num_vertices());
  if (g.num_edges() == 0) return x;

  if (try_bipartition(g)) {
    // the polytope is integral here, so the direct solve is exact and keeps
    // the output integral (the double cover of a bipartite graph is two
    // independent copies, whose optima need not agree edge by edge)
    for (Edge e : max_bipartite_bmatching(g, b)) x.set_twice(e, 2);
    return x;
  }

  DoubleCover dc = double_cover(g, b);
  auto y = max_bipartite_bmatching(dc.graph, dc.b);
  std::unordered_set<Edge, EdgeHash> in_y(y.begin(), y.end());
  VertexId n = g.num_vertices();
  for (Edge e : g.edge_list()) {
    int t = static_cast<int>(in_y.count(Edge(e.u, n + e.v))) +
            static_cast<int>(in_y.count(Edge(e.v, n + e.u)));
    if (t > 0) x.set_twice(e, t);
  }
  return x;
}

EulerPartition euler_partition(const DynamicGraph& g) {
  VertexId n = g.num_vertices();
  std::vector<std::set<VertexId>> rem(n);
  for (Edge e : g.edge_list()) {
    rem[e.u].insert(e.v);
    rem[e.v].insert(e.u);
  }

  auto walk_from = [&](VertexId start) {
    Walk w;
    w.vertices.push_back(start);
    VertexId cur = start;
    while (!rem[cur].empty()) {
      VertexId next = *rem[cur].begin();
      rem[cur].erase(rem[cur].begin());
      rem[next].erase(cur);
      w.vertices.push_back(next);
      cur = next;
    }
    return w;
  };

  EulerPartition part;
  std::set<VertexId> odd;
  for (VertexId v = 0; v < n; ++v)
    if (rem[v].size() % 2 == 1) odd.insert(v);

  // a maximal trail from an odd vertex must end at another odd vertex,
  // flipping both to even and nothing else
  while (!odd.empty()) {
    VertexId v = *odd.begin();
    Walk w = walk_from(v);
    if (odd.erase(w.vertices.front()) + odd.erase(w.vertices.back()) != 2)
      throw std::logic_error("trail endpoints were not both odd");
    part.trails.push_back(std::move(w));
  }

  for (VertexId v = 0; v < n; ++v)
    while (!rem[v].empty()) {
      Walk w = walk_from(v);
      if (!w.closed())
        throw std::logic_error("even-degree walk failed to close");
      part.circuits.push_back(std::move(w));
    }
  return part;
}

namespace {

// subgraph of half-valued edges, kept as sorted adjacency sets
struct HalfSupport {
  std::vector<std::set<VertexId>> adj;
  std::size_t edges = 0;

  explicit HalfSupport(VertexId n) : adj(n) {}

  void add(Edge e) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
    ++edges;
  }
  void remove(Edge e) {
    adj[e.u].erase(e.v);
    adj[e.v].erase(e.u);
    --edges;
  }
  DynamicGraph to_graph() const {
    DynamicGraph g(static_cast<VertexId>(adj.size()));
    for (VertexId u = 0; u < adj.size(); ++u)
      for (VertexId v : adj[u])
        if (v > u) g.insert_edge(Edge(u, v));
    return g;
  }
};

// Adds first_delta, -first_delta, ... to the doubled values along the walk
// and removes its edges from the half support (every touched edge becomes
// integral).
void apply_alternation(FractionalAssignment& x, HalfSupport& half,
                       const Walk& w, int first_delta) {
  for (std::size_t i = 0; i < w.edge_count(); ++i) {
    Edge e = w.edge_at(i);
    int delta = (i % 2 == 0) ? first_delta : -first_delta;
    int t = x.twice(e);
    if (t != 1) throw std::logic_error("alternation over a non-half edge");
    x.set_twice(e, t + delta);
    half.remove(e);
  }
}

Walk rotate_circuit(const Walk& w, VertexId u) {
  std::size_t idx = 0;
  while (idx < w.vertices.size() && w.vertices[idx] != u) ++idx;
  if (idx + 1 >= w.vertices.size())
    throw std::logic_error("rotation vertex not on circuit");
  Walk out;
  out.vertices.reserve(w.vertices.size());
  // drop the duplicated closing vertex, rotate, close again
  std::size_t len = w.vertices.size() - 1;
  for (std::size_t i = 0; i <= len; ++i)
    out.vertices.push_back(w.vertices[(idx + i) % len]);
  return out;
}

std::vector<VertexId> component_of(const HalfSupport& half, VertexId root,
                                   std::vector<char>& seen) {
  std::vector<VertexId> comp;
  std::deque<VertexId> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    comp.push_back(u);
    for (VertexId v : half.adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  }
  return comp;
}

// Peels a cycle decomposition off an all-even-degree edge set and splices an
// even closed walk out of it: either a single even cycle, or two odd cycles
// sharing a vertex. The caller guarantees the component is not one odd cycle,
// so one of the two must exist.
Walk find_even_closed_walk(const HalfSupport& half,
                           const std::vector<VertexId>& comp) {
  std::vector<std::set<VertexId>> work(half.adj.size());
  for (VertexId u : comp) work[u] = half.adj[u];

  std::vector<Walk> cycles;
  for (VertexId root : comp) {
    while (!work[root].empty()) {
      // walk until a vertex repeats; the tail from its first occurrence is a
      // simple cycle
      std::vector<VertexId> path{root};
      std::unordered_map<VertexId, std::size_t> pos{{root, 0}};
      VertexId prev = root, cur = *work[root].begin();
      for (;;) {
        auto it = pos.find(cur);
        if (it != pos.end()) {
          Walk cycle;
          cycle.vertices.assign(path.begin() + it->second, path.end());
          cycle.vertices.push_back(cur);
          for (std::size_t i = 0; i + 1 < cycle.vertices.size(); ++i) {
            work[cycle.vertices[i]].erase(cycle.vertices[i + 1]);
            work[cycle.vertices[i + 1]].erase(cycle.vertices[i]);
          }
          cycles.push_back(std::move(cycle));
          break;
        }
        pos.emplace(cur, path.size());
        path.push_back(cur);
        auto& nb = work[cur];
        VertexId next = *nb.begin();
        if (next == prev) {
          auto second = std::next(nb.begin());
          if (second == nb.end())
            throw std::logic_error("dead end while peeling cycles");
          next = *second;
        }
        prev = cur;
        cur = next;
      }
    }
  }

  for (const Walk& c : cycles)
    if (c.edge_count() % 2 == 0) return c;

  // all cycles odd: two of them share a vertex, else the component would be
  // disconnected or a single odd cycle
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    std::unordered_set<VertexId> verts(cycles[i].vertices.begin(),
                                       cycles[i].vertices.end());
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      for (VertexId v : cycles[j].vertices) {
        if (!verts.count(v)) continue;
        Walk a = rotate_circuit(cycles[i], v);
        Walk b = rotate_circuit(cycles[j], v);
        a.vertices.insert(a.vertices.end(), b.vertices.begin() + 1,
                          b.vertices.end());
        return a;
      }
    }
  }
  throw std::logic_error("no even closed walk in a non-cycle component");
}

}  // namespace

std::vector<Edge> round_half_integral(const FractionalAssignment& x,
                                      const BVector& b) {
  VertexId n = x.num_vertices();
  if (b.size() != n) throw ContractViolation("capacity vector size mismatch");
  for (VertexId v = 0; v < n; ++v)
    if (x.twice_load(v) > 2 * b[v])
      throw ContractViolation("input assignment is infeasible");

  FractionalAssignment cur(n);
  HalfSupport half(n);
  for (const auto& [e, t] : x.support()) {
    cur.set_twice(e, t);
    if (t == 1) half.add(e);
  }

  // phase 1: trails, +1/2 first from an odd-degree endpoint (slack is
  // guaranteed there: odd fractional degree cannot be capacity-tight)
  EulerPartition part = euler_partition(half.to_graph());
  for (const Walk& w : part.trails) apply_alternation(cur, half, w, +1);
  for (VertexId v = 0; v < n; ++v)
    if (half.adj[v].size() % 2 != 0)
      throw std::logic_error("odd degree left after trail rounding");

  // phase 2: circuits; even ones round freely, odd ones need a vertex with a
  // full unit of slack. Re-partition until nothing moves, then splice even
  // closed walks out of components that are not bare odd cycles.
  while (half.edges > 0) {
    part = euler_partition(half.to_graph());
    if (!part.trails.empty())
      throw std::logic_error("trail appeared in an all-even residual");
    bool progress = false;
    for (const Walk& w : part.circuits) {
      if (w.edge_count() % 2 == 0) {
        apply_alternation(cur, half, w, +1);
        progress = true;
        continue;
      }
      VertexId slack_vertex = n;
      for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
        VertexId v = w.vertices[i];
        if (cur.twice_load(v) <= 2 * b[v] - 2) slack_vertex = std::min(slack_vertex, v);
      }
      if (slack_vertex < n) {
        apply_alternation(cur, half, rotate_circuit(w, slack_vertex), +1);
        progress = true;
      }
    }
    if (progress) continue;

    bool spliced = false;
    std::vector<char> seen(n, 0);
    for (VertexId root = 0; root < n; ++root) {
      if (seen[root] || half.adj[root].empty()) continue;
      auto comp = component_of(half, root, seen);
      std::size_t comp_edges = 0;
      bool all_deg2 = true;
      for (VertexId v : comp) {
        comp_edges += half.adj[v].size();
        all_deg2 &= half.adj[v].size() == 2;
      }
      comp_edges /= 2;
      if (all_deg2 && comp_edges == comp.size() && comp_edges % 2 == 1)
        continue;  // bare odd cycle, final phase handles it
      apply_alternation(cur, half, find_even_closed_walk(half, comp), +1);
      spliced = true;
      break;
    }
    if (!spliced) break;
  }

  // residual must now be vertex-disjoint odd cycles, all capacity-tight
  std::vector<char> seen(n, 0);
  std::vector<std::vector<VertexId>> residual;
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root] || half.adj[root].empty()) continue;
    auto comp = component_of(half, root, seen);
    for (VertexId v : comp) {
      if (half.adj[v].size() != 2)
        throw std::logic_error("residual component is not a cycle");
      if (cur.twice_load(v) != 2 * b[v])
        throw std::logic_error("residual cycle vertex is not tight");
    }
    std::size_t comp_edges = comp.size();  // degree-2 everywhere
    if (comp_edges % 2 == 0)
      throw std::logic_error("even cycle survived circuit rounding");
    residual.push_back(std::move(comp));
  }

  // phase 3: lose one half per tight odd cycle, starting -1/2 at the lowest id
  for (const auto& comp : residual) {
    VertexId u = *std::min_element(comp.begin(), comp.end());
    Walk w;
    w.vertices.push_back(u);
    VertexId prev = u, curv = *half.adj[u].begin();
    while (curv != u) {
      w.vertices.push_back(curv);
      VertexId next = *half.adj[curv].begin();
      if (next == prev) next = *std::next(half.adj[curv].begin());
      prev = curv;
      curv = next;
    }
    w.vertices.push_back(u);
    apply_alternation(cur, half, w, -1);
  }

  if (half.edges != 0)
    throw std::logic_error("half-valued edges survived rounding");

  std::vector<Edge> out;
  for (const auto& [e, t] : cur.support()) {
    if (t != 2) throw std::logic_error("non-integral value after rounding");
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());

  // the rounded set must be a feasible b-matching
  for (VertexId v = 0; v < n; ++v)
    if (cur.twice_load(v) > 2 * b[v])
      throw std::logic_error("rounded matching exceeds a capacity");
  return out;
}

}  // namespace kec
