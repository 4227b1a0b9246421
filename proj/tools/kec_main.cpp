#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "kec/bench.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dynamic approximate maximum k-edge coloring workbench"};
  app.require_subcommand(1);

  struct {
    std::string algo = "greedy";
    int k = 0;
    double epsilon = 0.25;
    std::uint64_t seed = 0;
    bool oracle = false;
    bool timing = false;
    std::string stream;
    std::string metrics = "-";
    long long inject_fault = 0;
  } r;

  auto add_replay_flags = [&](CLI::App* cmd) {
    cmd->add_option("--algo", r.algo,
                    "greedy | matcho | matcha | matcho-bip | matcha-bip")
        ->required();
    cmd->add_option("--k", r.k, "palette size; defaults to the stream header");
    cmd->add_option("--epsilon", r.epsilon,
                    "amortization/sparsifier parameter (default 0.25)");
    cmd->add_option("--seed", r.seed, "RNG seed for the pipelines");
    cmd->add_flag("--oracle", r.oracle,
                  "compute per-step p* on small instances");
    cmd->add_option("--stream", r.stream, "update stream path")->required();
  };

  CLI::App* run = app.add_subcommand("run", "replay a stream, emit metrics");
  add_replay_flags(run);
  run->add_option("--metrics", r.metrics,
                  "metrics output path, '-' for stdout (default)");
  run->add_flag("--timing", r.timing,
                "record real elapsed_ns (breaks byte-identical output)");

  CLI::App* verify =
      app.add_subcommand("verify", "replay with every invariant checked");
  add_replay_flags(verify);
  verify->add_option("--metrics", r.metrics, "accepted for flag parity; unused");
  verify->add_flag("--timing", r.timing, "accepted for flag parity; unused");
  verify->add_option("--inject-fault", r.inject_fault,
                     "test-only: corrupt the coloring after this step");

  struct {
    kec::VertexId n = 16;
    long long steps = 100;
    double p_delete = 0.3;
    std::uint64_t seed = 0;
    int k = 2;
    bool bipartite = false;
    std::size_t max_edges = 0;
    std::string out = "-";
  } g;

  CLI::App* gen = app.add_subcommand("gen", "generate a random update stream");
  gen->add_option("--n", g.n, "vertex count (default 16)");
  gen->add_option("--steps", g.steps, "number of updates (default 100)");
  gen->add_option("--p-delete", g.p_delete,
                  "per-step delete probability (default 0.3)");
  gen->add_option("--seed", g.seed, "RNG seed");
  gen->add_option("--k", g.k, "palette size written to the header (default 2)");
  gen->add_flag("--bipartite", g.bipartite,
                "only edges between [0, ceil(n/2)) and the rest");
  gen->add_option("--max-edges", g.max_edges,
                  "force deletions once this many edges are present");
  gen->add_option("--out", g.out, "output path, '-' for stdout (default)");

  struct {
    std::string stream;
    int k = 0;
  } o;

  CLI::App* oracle =
      app.add_subcommand("oracle", "exact optima of a stream's final graph");
  oracle->add_option("--stream", o.stream, "update stream path")->required();
  oracle->add_option("--k", o.k, "palette size; defaults to the stream header");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed() || verify->parsed()) {
    CLI::App* cmd = run->parsed() ? run : verify;
    auto algo = kec::algo_from_name(r.algo);
    if (!algo) {
      kec::log_error("unknown algo '" + r.algo + "'");
      return 2;
    }
    kec::RunConfig cfg;
    cfg.algo = *algo;
    if (cmd->count("--k")) cfg.k = r.k;
    cfg.epsilon = r.epsilon;
    cfg.seed = r.seed;
    cfg.oracle = r.oracle;
    cfg.timing = r.timing;
    cfg.stream_path = r.stream;
    cfg.metrics_path = r.metrics;
    if (run->parsed()) return kec::cmd_run(cfg);
    std::optional<long long> fault;
    if (verify->count("--inject-fault")) fault = r.inject_fault;
    return kec::cmd_verify(cfg, fault);
  }

  if (gen->parsed()) {
    kec::GenConfig cfg;
    cfg.n = g.n;
    cfg.steps = g.steps;
    cfg.p_delete = g.p_delete;
    cfg.seed = g.seed;
    cfg.k = g.k;
    cfg.bipartite = g.bipartite;
    if (gen->count("--max-edges")) cfg.max_edges = g.max_edges;
    return kec::cmd_gen(cfg, g.out);
  }

  if (oracle->parsed()) {
    std::optional<int> k;
    if (oracle->count("--k")) k = o.k;
    return kec::cmd_oracle(o.stream, k);
  }

  return 0;
}
