#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kec/graph.hpp"

namespace kec {

// Colors are 1..palette; kNoColor marks an uncolored edge. 64-bit because
// sparsifier buckets legitimately use palettes of size k*(1+eps)^i.
using Color = std::int64_t;
inline constexpr Color kNoColor = 0;

// Raised when a colorer cannot satisfy its promise (palette too small,
// bipartite colorer fed an edge inside one side, ...).
struct ColoringError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A partial proper edge coloring with O(1) free-color queries per vertex.
// Tracks, per vertex, which colors its incident colored edges use, and the
// global size of every color class.
class PartialColoring {
 public:
  PartialColoring(VertexId n, Color palette);

  VertexId num_vertices() const { return static_cast<VertexId>(used_.size()); }
  Color palette() const { return palette_; }
  int colored_count() const { return colored_; }

  Color color_of(Edge e) const;
  bool is_colored(Edge e) const { return color_.count(e) != 0; }
  bool is_free(VertexId v, Color c) const;
  std::optional<Edge> edge_with_color(VertexId v, Color c) const;
  int used_count(VertexId v) const;
  long long count_of_color(Color c) const;

  // e must be uncolored and c free at both endpoints
  void assign(Edge e, Color c);
  // returns the old color, kNoColor if e was uncolored (then a no-op)
  Color unassign(Edge e);

  // smallest color free at both u and v, kNoColor if none; examines at most
  // min(palette, used(u) + used(v) + 1) colors
  Color common_free_color(VertexId u, VertexId v) const;
  Color common_free_color(VertexId u, VertexId v, int& colors_examined) const;

  const std::unordered_map<Edge, Color, EdgeHash>& assignment() const {
    return color_;
  }

  // recomputes every index from the assignment and compares; used by `verify`
  bool validate(std::string* why = nullptr) const;

 private:
  void check_color(Color c) const;
  void check_vertex(VertexId v) const;

  Color palette_ = 0;
  int colored_ = 0;
  std::unordered_map<Edge, Color, EdgeHash> color_;
  std::vector<std::unordered_map<Color, VertexId>> used_;
  std::unordered_map<Color, long long> class_size_;
};

// First-fit total coloring in canonical edge order; throws ColoringError if
// some edge has no common free color (always succeeds when
// palette >= 2 * max_degree - 1).
PartialColoring greedy_total_color(const DynamicGraph& g, Color palette);

// Total proper coloring with max_degree + 1 colors (Misra & Gries).
PartialColoring vizing_color(const DynamicGraph& g);

// Total proper coloring of a bipartite graph with exactly max_degree colors
// (Koenig). side[v] in {0,1}; every edge must cross sides.
PartialColoring bipartite_color(const DynamicGraph& g,
                                const std::vector<std::uint8_t>& side);

// Drops the palette() - k smallest color classes (ties: higher color index is
// dropped first) and renumbers the survivors into 1..k. If palette() <= k the
// assignment is kept whole and the palette is widened to k.
PartialColoring discard_least_used(const PartialColoring& f, Color k);

// Checks f against g from scratch: every colored edge present in g, colors in
// range, no two incident edges sharing a color.
bool verify_proper(const PartialColoring& f, const DynamicGraph& g,
                   std::string* why = nullptr);

}  // namespace kec
