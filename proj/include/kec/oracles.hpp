#pragma once

#include <utility>
#include <vector>

#include "kec/coloring.hpp"
#include "kec/graph.hpp"
#include "kec/polytope.hpp"

namespace kec {

// Raised when an instance is over the exhaustive-search size limit.
struct OracleRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  // optimum; for brute_fractional this is in doubled (half-integral) units
  long long value = 0;
  std::vector<std::pair<Edge, Color>> coloring;  // brute_k_edge_coloring
  std::vector<Edge> matching;                    // brute_k_matching
  std::vector<std::pair<Edge, int>> twice_x;     // brute_fractional
};

// Exact maximum number of colorable edges with k colors. Refuses m > 16.
OracleResult brute_k_edge_coloring(const DynamicGraph& g, int k);

// Exact maximum k-matching size. Refuses m > 16.
OracleResult brute_k_matching(const DynamicGraph& g, int k);

// Exact optimum of the half-integral relaxation (which equals the fractional
// LP optimum). Refuses m > 10.
OracleResult brute_fractional(const DynamicGraph& g, const BVector& b);

}  // namespace kec
