#include "kec/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace kec {

namespace {

constexpr std::size_t kColoringCap = 16;
constexpr std::size_t kMatchingCap = 16;
constexpr std::size_t kFractionalCap = 10;

// maps the endpoints of the edge list to 0..V-1 so per-vertex state stays
// dense no matter how large the host graph is
struct CompactInstance {
  std::vector<Edge> edges;          // compacted endpoints, search order
  std::vector<VertexId> original;   // compact id -> original vertex
  std::size_t num_vertices() const { return original.size(); }
};

CompactInstance compact(const DynamicGraph& g) {
  CompactInstance inst;
  auto list = g.edge_list();
  std::unordered_map<VertexId, VertexId> id;
  auto remap = [&](VertexId v) {
    auto [it, fresh] = id.emplace(v, static_cast<VertexId>(inst.original.size()));
    if (fresh) inst.original.push_back(v);
    return it->second;
  };
  // descending degree-sum makes the capacity pruning bite early
  std::stable_sort(list.begin(), list.end(), [&](Edge a, Edge b) {
    return g.degree(a.u) + g.degree(a.v) > g.degree(b.u) + g.degree(b.v);
  });
  for (Edge e : list) inst.edges.push_back(Edge(remap(e.u), remap(e.v)));
  return inst;
}

// per-vertex count of still-unprocessed incident edges, for every suffix
std::vector<std::vector<int>> suffix_degrees(const CompactInstance& inst) {
  std::size_t m = inst.edges.size(), n = inst.num_vertices();
  std::vector<std::vector<int>> suf(m + 1, std::vector<int>(n, 0));
  for (std::size_t i = m; i-- > 0;) {
    suf[i] = suf[i + 1];
    ++suf[i][inst.edges[i].u];
    ++suf[i][inst.edges[i].v];
  }
  return suf;
}

struct ColoringSearch {
  const CompactInstance& inst;
  const std::vector<std::vector<int>>& suf;
  int k;
  std::vector<std::uint64_t> mask;  // colors used at each vertex, bit c-1
  std::vector<int> cdeg;            // colored degree at each vertex
  std::vector<Color> cur, best_assign;
  int colored = 0, best = -1;

  ColoringSearch(const CompactInstance& ci, const std::vector<std::vector<int>>& s,
                 int kk)
      : inst(ci),
        suf(s),
        k(kk),
        mask(ci.num_vertices(), 0),
        cdeg(ci.num_vertices(), 0),
        cur(ci.edges.size(), kNoColor),
        best_assign(ci.edges.size(), kNoColor) {}

  int capacity_bound(std::size_t i) const {
    int slots = 0;
    for (std::size_t v = 0; v < inst.num_vertices(); ++v)
      slots += std::min(k - cdeg[v], suf[i][v]);
    return slots / 2;
  }

  void seed() {
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
      Edge e = inst.edges[i];
      std::uint64_t both = mask[e.u] | mask[e.v];
      for (int c = 1; c <= k; ++c)
        if (!(both >> (c - 1) & 1)) {
          place(i, c);
          break;
        }
    }
    best = colored;
    best_assign = cur;
    for (std::size_t i = inst.edges.size(); i-- > 0;)
      if (cur[i] != kNoColor) unplace(i);
  }

  void place(std::size_t i, int c) {
    Edge e = inst.edges[i];
    mask[e.u] |= 1ull << (c - 1);
    mask[e.v] |= 1ull << (c - 1);
    ++cdeg[e.u];
    ++cdeg[e.v];
    cur[i] = c;
    ++colored;
  }

  void unplace(std::size_t i) {
    Edge e = inst.edges[i];
    int c = static_cast<int>(cur[i]);
    mask[e.u] &= ~(1ull << (c - 1));
    mask[e.v] &= ~(1ull << (c - 1));
    --cdeg[e.u];
    --cdeg[e.v];
    cur[i] = kNoColor;
    --colored;
  }

  void dfs(std::size_t i, int max_used) {
    std::size_t m = inst.edges.size();
    if (colored + capacity_bound(i) <= best ||
        colored + static_cast<int>(m - i) <= best)
      return;
    if (i == m) {
      best = colored;
      best_assign = cur;
      return;
    }
    Edge e = inst.edges[i];
    std::uint64_t both = mask[e.u] | mask[e.v];
    // color classes are interchangeable, so a fresh color only ever needs to
    // be the next unused index
    int limit = std::min(k, max_used + 1);
    for (int c = 1; c <= limit; ++c) {
      if (both >> (c - 1) & 1) continue;
      place(i, c);
      dfs(i + 1, std::max(max_used, c));
      unplace(i);
    }
    cur[i] = kNoColor;
    dfs(i + 1, max_used);
  }
};

}  // namespace

OracleResult brute_k_edge_coloring(const DynamicGraph& g, int k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (g.num_edges() > kColoringCap)
    throw OracleRefused("coloring oracle refuses instances with more than " +
                        std::to_string(kColoringCap) + " edges");
  CompactInstance inst = compact(g);
  auto suf = suffix_degrees(inst);
  // colors beyond the edge count can never help
  int k_eff = std::min<int>(k, static_cast<int>(inst.edges.size()));
  OracleResult res;
  if (inst.edges.empty()) return res;
  ColoringSearch search(inst, suf, k_eff);
  search.seed();
  search.dfs(0, 0);
  res.value = search.best;
  for (std::size_t i = 0; i < inst.edges.size(); ++i)
    if (search.best_assign[i] != kNoColor)
      res.coloring.emplace_back(Edge(inst.original[inst.edges[i].u],
                                     inst.original[inst.edges[i].v]),
                                search.best_assign[i]);
  std::sort(res.coloring.begin(), res.coloring.end());
  return res;
}

OracleResult brute_k_matching(const DynamicGraph& g, int k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (g.num_edges() > kMatchingCap)
    throw OracleRefused("matching oracle refuses instances with more than " +
                        std::to_string(kMatchingCap) + " edges");
  CompactInstance inst = compact(g);
  auto suf = suffix_degrees(inst);
  std::size_t m = inst.edges.size();
  std::vector<int> load(inst.num_vertices(), 0);
  std::vector<char> take(m, 0), best_take(m, 0);
  int size = 0, best = -1;

  auto capacity_bound = [&](std::size_t i) {
    int slots = 0;
    for (std::size_t v = 0; v < inst.num_vertices(); ++v)
      slots += std::min(k - load[v], suf[i][v]);
    return slots / 2;
  };

  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (size + capacity_bound(i) <= best) return;
    if (i == m) {
      best = size;
      best_take = take;
      return;
    }
    Edge e = inst.edges[i];
    if (load[e.u] < k && load[e.v] < k) {
      ++load[e.u], ++load[e.v], ++size, take[i] = 1;
      self(self, i + 1);
      --load[e.u], --load[e.v], --size, take[i] = 0;
    }
    self(self, i + 1);
  };
  dfs(dfs, 0);

  OracleResult res;
  res.value = std::max(best, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (best_take[i])
      res.matching.push_back(
          Edge(inst.original[inst.edges[i].u], inst.original[inst.edges[i].v]));
  std::sort(res.matching.begin(), res.matching.end());
  return res;
}

OracleResult brute_fractional(const DynamicGraph& g, const BVector& b) {
  if (b.size() != g.num_vertices())
    throw ContractViolation("capacity vector size mismatch");
  if (g.num_edges() > kFractionalCap)
    throw OracleRefused("fractional oracle refuses instances with more than " +
                        std::to_string(kFractionalCap) + " edges");
  CompactInstance inst = compact(g);
  std::size_t m = inst.edges.size();
  std::vector<int> cap(inst.num_vertices());
  for (std::size_t v = 0; v < inst.num_vertices(); ++v)
    cap[v] = 2 * b[inst.original[v]];
  std::vector<int> load(inst.num_vertices(), 0), val(m, 0), best_val(m, 0);
  long long value = 0, best = -1;

  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (value + 2 * static_cast<long long>(m - i) <= best) return;
    if (i == m) {
      best = value;
      best_val = val;
      return;
    }
    Edge e = inst.edges[i];
    int room = std::min(cap[e.u] - load[e.u], cap[e.v] - load[e.v]);
    for (int t = std::min(2, room); t >= 0; --t) {
      load[e.u] += t, load[e.v] += t, value += t, val[i] = t;
      self(self, i + 1);
      load[e.u] -= t, load[e.v] -= t, value -= t;
    }
    val[i] = 0;
  };
  dfs(dfs, 0);

  OracleResult res;
  res.value = std::max<long long>(best, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (best_val[i] != 0)
      res.twice_x.emplace_back(
          Edge(inst.original[inst.edges[i].u], inst.original[inst.edges[i].v]),
          best_val[i]);
  std::sort(res.twice_x.begin(), res.twice_x.end());
  return res;
}

}  // namespace kec
