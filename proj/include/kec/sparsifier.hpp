#pragma once

#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "kec/coloring.hpp"
#include "kec/graph.hpp"

namespace kec {

// Bucketed color sparsifier for a fractional k-matching.
//
// Edges are grouped by value into buckets ((1+eps)^-i, (1+eps)^-(i+1)] for
// i = 1..ell, ell = ceil(2 * log_{1+eps}(n / eps)); values at or below the
// last threshold are not tracked. Each bucket keeps a total proper coloring
// of its edges with 3 * ceil(k * (1+eps)^i) colors, assigned uniformly at
// random among the free ones. A request keeps whole buckets that are cheap
// enough and otherwise keeps the edges of 3 * ceil(k*d) sampled colors.
class Sparsifier {
 public:
  Sparsifier(VertexId n, int k, double epsilon, std::uint64_t seed);

  int bucket_count() const { return ell_; }
  int k() const { return k_; }
  double epsilon() const { return eps_; }

  double threshold(int i) const;  // (1+eps)^-i, 0 <= i <= ell
  Color palette_of(int i) const;  // 3 * ceil(k * (1+eps)^i)

  // bucket for a value x in (0, 1]; nullopt when x is at or below the floor
  std::optional<int> bucket_index(double x) const;

  // moves e between buckets; old_x/new_x of 0 mean absent. The old value
  // must match what the sparsifier has tracked.
  void apply_value_change(Edge e, double old_x, double new_x);

  // sampled edge set; d must be at least default_d-like floor for this (k,eps)
  std::vector<Edge> request(double d);

  static double default_d(int k, double epsilon);

  std::size_t tracked_edges() const { return location_.size(); }
  int bucket_of(Edge e) const;  // 0 when untracked
  std::vector<Edge> bucket_edges(int i) const;
  const PartialColoring& bucket_coloring(int i) const;

  // cross-checks every index: bucket membership against the stored values,
  // per-bucket colorings total and internally consistent, palettes right
  bool validate(std::string* why = nullptr) const;

 private:
  struct Bucket {
    PartialColoring coloring;
    std::unordered_map<Color, std::vector<Edge>> by_color;
  };

  Bucket& bucket(int i) { return buckets_.at(i - 1); }
  const Bucket& bucket(int i) const { return buckets_.at(i - 1); }
  Color random_free_color(const Bucket& bk, int i, Edge e);

  VertexId n_;
  int k_;
  double eps_;
  int ell_;
  std::vector<double> pow_;  // (1+eps)^i for i = 0..ell
  std::vector<Bucket> buckets_;
  std::unordered_map<Edge, std::pair<int, double>, EdgeHash> location_;
  std::mt19937_64 rng_;
};

}  // namespace kec
