#pragma once

#include <vector>

#include "kec/coloring.hpp"
#include "kec/graph.hpp"

namespace kec {

// Fully dynamic greedy coloring. Invariant after every update: no uncolored
// present edge has a color free at both endpoints (maximality).
//
// insert: give the new edge the smallest common free color, or leave it
// uncolored. erase of an edge colored c: at each endpoint in turn, scan the
// incident uncolored edges in neighbor order and hand c to the first one
// where it is free at both ends (at most one repair per endpoint).
class GreedyState {
 public:
  GreedyState(VertexId n, int k);

  int k() const { return k_; }
  const DynamicGraph& graph() const { return g_; }
  const PartialColoring& coloring() const { return f_; }

  // returns the color given to e (kNoColor if left uncolored)
  Color insert(Edge e);
  // returns the edges recolored during repair (at most two)
  std::vector<Edge> erase(Edge e);
  void apply(const UpdateEvent& ev);

  // instrumentation for the per-update cost bounds
  int last_colors_examined() const { return last_colors_examined_; }
  int last_candidates_scanned() const { return last_candidates_scanned_; }
  long long total_colors_examined() const { return total_colors_examined_; }
  long long total_candidates_scanned() const {
    return total_candidates_scanned_;
  }

 private:
  DynamicGraph g_;
  PartialColoring f_;
  int k_;
  int last_colors_examined_ = 0;
  int last_candidates_scanned_ = 0;
  long long total_colors_examined_ = 0;
  long long total_candidates_scanned_ = 0;
};

}  // namespace kec
