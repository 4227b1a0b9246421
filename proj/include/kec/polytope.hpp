#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kec/graph.hpp"

namespace kec {

// Per-vertex capacities, all >= 1.
struct BVector {
  explicit BVector(std::vector<int> caps);
  static BVector uniform(VertexId n, int k);

  int operator[](VertexId v) const { return b_.at(v); }
  VertexId size() const { return static_cast<VertexId>(b_.size()); }
  int min_b() const { return min_b_; }

 private:
  std::vector<int> b_;
  int min_b_;
};

// Half-integral edge weights, stored doubled so every entry is an exact
// integer in {0, 1, 2}. Loads and the total value are doubled likewise.
class FractionalAssignment {
 public:
  explicit FractionalAssignment(VertexId n) : twice_load_(n, 0) {}

  VertexId num_vertices() const {
    return static_cast<VertexId>(twice_load_.size());
  }
  int twice(Edge e) const;
  void set_twice(Edge e, int t);  // t in {0, 1, 2}
  int twice_load(VertexId v) const { return twice_load_.at(v); }
  long long twice_value() const { return twice_value_; }
  double value() const { return static_cast<double>(twice_value_) / 2.0; }

  // nonzero entries only
  const std::unordered_map<Edge, int, EdgeHash>& support() const {
    return twice_;
  }

 private:
  std::unordered_map<Edge, int, EdgeHash> twice_;
  std::vector<int> twice_load_;
  long long twice_value_ = 0;
};

// support within g, entries half-integral, loads within b
bool verify_feasible(const FractionalAssignment& x, const BVector& b,
                     const DynamicGraph& g, std::string* why = nullptr);

// A walk given by its vertex sequence; edge i connects vertices i and i+1.
struct Walk {
  std::vector<VertexId> vertices;

  bool closed() const {
    return vertices.size() >= 2 && vertices.front() == vertices.back();
  }
  std::size_t edge_count() const {
    return vertices.empty() ? 0 : vertices.size() - 1;
  }
  Edge edge_at(std::size_t i) const {
    return Edge(vertices[i], vertices[i + 1]);
  }
};

// Every edge appears in exactly one walk. Each odd-degree vertex is the
// endpoint of exactly one trail; even-degree vertices end no trail.
struct EulerPartition {
  std::vector<Walk> trails;
  std::vector<Walk> circuits;
};

// Removes maximal trails from odd-degree vertices (smallest id first), then
// splits the even-degree rest into circuits (smallest start id first).
EulerPartition euler_partition(const DynamicGraph& g);

// Bipartite double cover: vertex v becomes v (left) and n+v (right); edge
// (u,v) becomes (u, n+v) and (v, n+u); capacities are inherited on both
// copies.
struct DoubleCover {
  DynamicGraph graph;
  BVector b;
};
DoubleCover double_cover(const DynamicGraph& g, const BVector& b);

// Maximum b-matching of a bipartite graph, via max flow. Deterministic.
// Throws ContractViolation if g is not bipartite.
std::vector<Edge> max_bipartite_bmatching(const DynamicGraph& g,
                                          const BVector& b);

// Maximizes sum(x_e) over 0 <= x_e <= 1 with per-vertex loads <= b_v. The
// returned entries are half-integral and the value equals the LP optimum.
// Bipartite inputs are solved directly (integral output); everything else
// goes through the double cover.
FractionalAssignment half_integral_optimum(const DynamicGraph& g,
                                           const BVector& b);

// Rounds a feasible half-integral x to an integral b-matching of value at
// least (1 - 1/(3*beta)) * value(x), beta = min b_v. The intermediate
// structure (all-even residual after trail rounding; final residual a set of
// vertex-disjoint capacity-tight odd cycles) is asserted at runtime.
std::vector<Edge> round_half_integral(const FractionalAssignment& x,
                                      const BVector& b);

// 2-colors g if bipartite (BFS, component roots get side 0).
std::optional<std::vector<std::uint8_t>> try_bipartition(
    const DynamicGraph& g);

}  // namespace kec
