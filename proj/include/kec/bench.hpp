#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kec/graph.hpp"

namespace kec {

enum class Algo { Greedy, MatchO, MatchA, MatchOBip, MatchABip };

std::optional<Algo> algo_from_name(const std::string& name);
const char* algo_name(Algo a);

struct RunConfig {
  Algo algo = Algo::Greedy;
  std::optional<int> k;  // overrides the stream header when set
  double epsilon = 0.25;
  std::uint64_t seed = 0;
  bool oracle = false;
  // real elapsed_ns per step; off by default because it breaks byte-identical
  // metrics across runs
  bool timing = false;
  std::string stream_path;
  std::string metrics_path;  // "-" for stdout
};

struct GenConfig {
  VertexId n = 16;
  long long steps = 100;
  double p_delete = 0.3;
  std::uint64_t seed = 0;
  int k = 2;
  bool bipartite = false;                  // left side = [0, ceil(n/2))
  std::optional<std::size_t> max_edges;    // force deletes at this size
};

Stream generate_stream(const GenConfig& cfg);

// Log verbosity from KEC_LOG: quiet|info|debug (or 0|1|2); default info.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);
void log_error(const std::string& msg);

int cmd_run(const RunConfig& cfg);
int cmd_gen(const GenConfig& cfg, const std::string& out_path);  // "-" stdout
// Replays with every per-step-assertable module invariant checked; exit 0
// iff none fails. inject_fault_step corrupts the coloring at that step to
// prove the harness catches violations.
int cmd_verify(const RunConfig& cfg,
               std::optional<long long> inject_fault_step = std::nullopt);
int cmd_oracle(const std::string& stream_path, std::optional<int> k);

}  // namespace kec
