#include "kec/coloring.hpp"

#include <algorithm>

namespace kec {

PartialColoring::PartialColoring(VertexId n, Color palette)
    : palette_(palette), used_(n) {
  if (palette < 0) throw ContractViolation("negative palette");
}

void PartialColoring::check_color(Color c) const {
  if (c < 1 || c > palette_)
    throw ContractViolation("color " + std::to_string(c) +
                            " outside palette [1," + std::to_string(palette_) +
                            "]");
}

void PartialColoring::check_vertex(VertexId v) const {
  if (v >= used_.size())
    throw ContractViolation("vertex " + std::to_string(v) + " out of range");
}

Color PartialColoring::color_of(Edge e) const {
  auto it = color_.find(e);
  return it == color_.end() ? kNoColor : it->second;
}

bool PartialColoring::is_free(VertexId v, Color c) const {
  check_vertex(v);
  check_color(c);
  return used_[v].find(c) == used_[v].end();
}

std::optional<Edge> PartialColoring::edge_with_color(VertexId v,
                                                     Color c) const {
  check_vertex(v);
  check_color(c);
  auto it = used_[v].find(c);
  if (it == used_[v].end()) return std::nullopt;
  return Edge(v, it->second);
}

int PartialColoring::used_count(VertexId v) const {
  check_vertex(v);
  return static_cast<int>(used_[v].size());
}

long long PartialColoring::count_of_color(Color c) const {
  check_color(c);
  auto it = class_size_.find(c);
  return it == class_size_.end() ? 0 : it->second;
}

void PartialColoring::assign(Edge e, Color c) {
  check_vertex(e.v);
  check_color(c);
  if (color_.count(e))
    throw ContractViolation("assign to an already colored edge");
  if (!is_free(e.u, c) || !is_free(e.v, c))
    throw ContractViolation("color " + std::to_string(c) +
                            " not free at both endpoints of (" +
                            std::to_string(e.u) + "," + std::to_string(e.v) +
                            ")");
  color_.emplace(e, c);
  used_[e.u].emplace(c, e.v);
  used_[e.v].emplace(c, e.u);
  ++class_size_[c];
  ++colored_;
}

Color PartialColoring::unassign(Edge e) {
  auto it = color_.find(e);
  if (it == color_.end()) return kNoColor;
  Color c = it->second;
  color_.erase(it);
  used_[e.u].erase(c);
  used_[e.v].erase(c);
  auto cs = class_size_.find(c);
  if (--cs->second == 0) class_size_.erase(cs);
  --colored_;
  return c;
}

Color PartialColoring::common_free_color(VertexId u, VertexId v) const {
  int dummy = 0;
  return common_free_color(u, v, dummy);
}

Color PartialColoring::common_free_color(VertexId u, VertexId v,
                                         int& colors_examined) const {
  check_vertex(u);
  check_vertex(v);
  // among any used(u)+used(v)+1 distinct colors one is free at both ends,
  // so the scan never needs to look further than that
  Color limit = std::min<Color>(
      palette_, static_cast<Color>(used_[u].size() + used_[v].size() + 1));
  for (Color c = 1; c <= limit; ++c) {
    ++colors_examined;
    if (used_[u].find(c) == used_[u].end() &&
        used_[v].find(c) == used_[v].end())
      return c;
  }
  return kNoColor;
}

bool PartialColoring::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<std::unordered_map<Color, VertexId>> used(used_.size());
  std::unordered_map<Color, long long> sizes;
  for (const auto& [e, c] : color_) {
    if (e.u >= used_.size() || e.v >= used_.size())
      return fail("colored edge with out-of-range endpoint");
    if (c < 1 || c > palette_) return fail("color outside palette");
    if (!used[e.u].emplace(c, e.v).second)
      return fail("two edges at vertex " + std::to_string(e.u) +
                  " share color " + std::to_string(c));
    if (!used[e.v].emplace(c, e.u).second)
      return fail("two edges at vertex " + std::to_string(e.v) +
                  " share color " + std::to_string(c));
    ++sizes[c];
  }
  if (used != used_) return fail("per-vertex used-color index out of sync");
  if (sizes != class_size_) return fail("color class sizes out of sync");
  if (colored_ != static_cast<int>(color_.size()))
    return fail("colored_count out of sync");
  return true;
}

bool verify_proper(const PartialColoring& f, const DynamicGraph& g,
                   std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<std::vector<Color>> at(g.num_vertices());
  for (const auto& [e, c] : f.assignment()) {
    if (c < 1 || c > f.palette()) return fail("color outside palette");
    if (!g.has_edge(e))
      return fail("colored edge (" + std::to_string(e.u) + "," +
                  std::to_string(e.v) + ") not in graph");
    at[e.u].push_back(c);
    at[e.v].push_back(c);
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto& cs = at[v];
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
      return fail("vertex " + std::to_string(v) +
                  " has two incident edges with the same color");
  }
  return true;
}

PartialColoring greedy_total_color(const DynamicGraph& g, Color palette) {
  PartialColoring f(g.num_vertices(), palette);
  for (Edge e : g.edge_list()) {
    Color c = f.common_free_color(e.u, e.v);
    if (c == kNoColor)
      throw ColoringError("palette " + std::to_string(palette) +
                          " too small for a total coloring");
    f.assign(e, c);
  }
  return f;
}

namespace {

Color smallest_free(const PartialColoring& f, VertexId v) {
  for (Color c = 1; c <= f.palette(); ++c)
    if (f.is_free(v, c)) return c;
  throw ColoringError("no free color at vertex " + std::to_string(v));
}

// Walks the maximal alternating path from `start` whose first edge has color
// `a` (then b, a, b, ...) and swaps the two colors along it. The walk is
// collected first, then reassigned, so the coloring stays proper throughout.
void flip_alternating_path(PartialColoring& f, VertexId start, Color a,
                           Color b) {
  std::vector<Edge> path;
  VertexId cur = start;
  Color want = a;
  while (auto e = f.edge_with_color(cur, want)) {
    path.push_back(*e);
    cur = (e->u == cur) ? e->v : e->u;
    want = (want == a) ? b : a;
  }
  for (Edge e : path) f.unassign(e);
  for (std::size_t i = 0; i < path.size(); ++i)
    f.assign(path[i], i % 2 == 0 ? b : a);
}

// One step of Misra & Gries: colors the uncolored edge (x, y).
void mg_color_edge(PartialColoring& f, const DynamicGraph& g, VertexId x,
                   VertexId y) {
  // maximal fan of x starting at y: each next fan edge's color is free at
  // the previous fan vertex
  std::vector<VertexId> fan{y};
  std::vector<char> in_fan(g.num_vertices(), 0);
  in_fan[y] = 1;
  bool extended = true;
  while (extended) {
    extended = false;
    for (VertexId z : g.neighbors(x)) {
      if (in_fan[z]) continue;
      Color cz = f.color_of(Edge(x, z));
      if (cz != kNoColor && f.is_free(fan.back(), cz)) {
        fan.push_back(z);
        in_fan[z] = 1;
        extended = true;
      }
    }
  }

  Color c = smallest_free(f, x);
  Color d = smallest_free(f, fan.back());
  if (c != d) flip_alternating_path(f, x, d, c);  // afterwards d is free at x

  // first fan vertex where d is free; the prefix up to it is still a fan
  std::size_t w = 0;
  while (w < fan.size() && !f.is_free(fan[w], d)) ++w;
  if (w == fan.size())
    throw ColoringError("fan rotation failed to find a slot");

  // rotate: shift each fan edge's color one step toward y, then close with d
  std::vector<Color> shifted(w);
  for (std::size_t i = 0; i < w; ++i)
    shifted[i] = f.unassign(Edge(x, fan[i + 1]));
  for (std::size_t i = 0; i < w; ++i) f.assign(Edge(x, fan[i]), shifted[i]);
  f.assign(Edge(x, fan[w]), d);
}

}  // namespace

PartialColoring vizing_color(const DynamicGraph& g) {
  Color palette = static_cast<Color>(g.max_degree()) + 1;
  PartialColoring f(g.num_vertices(), palette);
  for (Edge e : g.edge_list()) mg_color_edge(f, g, e.u, e.v);
  return f;
}

PartialColoring bipartite_color(const DynamicGraph& g,
                                const std::vector<std::uint8_t>& side) {
  if (side.size() != g.num_vertices())
    throw ContractViolation("side vector size mismatch");
  for (Edge e : g.edge_list())
    if (side[e.u] == side[e.v] || side[e.u] > 1 || side[e.v] > 1)
      throw ColoringError("edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") does not cross the sides");

  Color palette = static_cast<Color>(g.max_degree());
  PartialColoring f(g.num_vertices(), palette);
  for (Edge e : g.edge_list()) {
    Color c = f.common_free_color(e.u, e.v);
    if (c == kNoColor) {
      // swap along the alternating path from v so u's free color opens at v;
      // the path cannot reach u (it would close an odd walk across the sides)
      c = smallest_free(f, e.u);
      Color d = smallest_free(f, e.v);
      flip_alternating_path(f, e.v, c, d);
    }
    f.assign(e, c);
  }
  return f;
}

PartialColoring discard_least_used(const PartialColoring& f, Color k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  PartialColoring out(f.num_vertices(), k);
  if (f.palette() <= k) {
    for (const auto& [e, c] : f.assignment()) out.assign(e, c);
    return out;
  }

  std::vector<Color> order(f.palette());
  for (Color c = 1; c <= f.palette(); ++c) order[c - 1] = c;
  std::stable_sort(order.begin(), order.end(), [&](Color a, Color b) {
    long long ca = f.count_of_color(a), cb = f.count_of_color(b);
    if (ca != cb) return ca < cb;
    return a > b;  // ties: drop the higher color index first
  });

  std::vector<Color> keep(order.begin() + (f.palette() - k), order.end());
  std::sort(keep.begin(), keep.end());
  std::vector<Color> renumber(f.palette() + 1, kNoColor);
  for (Color i = 0; i < k; ++i) renumber[keep[i]] = i + 1;

  for (const auto& [e, c] : f.assignment())
    if (renumber[c] != kNoColor) out.assign(e, renumber[c]);
  return out;
}

}  // namespace kec
