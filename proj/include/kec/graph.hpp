#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kec {

using VertexId = std::uint32_t;

// Thrown when a documented precondition is broken by the caller.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct StreamParseError : std::runtime_error {
  int line;
  StreamParseError(int line_, const std::string& msg);
};

// Undirected edge stored with u < v. Self-loops are rejected at construction.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b);

  auto operator<=>(const Edge&) const = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(e.u) << 32) | e.v);
  }
};

enum class UpdateKind : std::uint8_t { Insert, Delete };

struct UpdateEvent {
  UpdateKind kind = UpdateKind::Insert;
  Edge edge;
};

// Simple adjacency-list graph over a fixed vertex set [0, n).
// Neighbor lists are kept sorted; max_degree() is O(1) via a degree histogram.
class DynamicGraph {
 public:
  explicit DynamicGraph(VertexId n);

  VertexId num_vertices() const { return static_cast<VertexId>(adj_.size()); }
  std::size_t num_edges() const { return m_; }

  bool has_edge(Edge e) const;
  void insert_edge(Edge e);  // edge must be absent, endpoints in range
  void delete_edge(Edge e);  // edge must be present
  // true iff the event's precondition held and the graph was mutated
  bool apply(const UpdateEvent& ev);

  std::size_t degree(VertexId v) const;
  std::size_t max_degree() const { return max_deg_; }
  const std::vector<VertexId>& neighbors(VertexId v) const;

  // all edges, sorted by (u, v)
  std::vector<Edge> edge_list() const;

 private:
  void check_vertex(VertexId v) const;
  void bump_degree(VertexId v, int delta);

  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::size_t> deg_hist_;
  std::size_t m_ = 0;
  std::size_t max_deg_ = 0;
};

// Update stream text format:
//   H <n> <k>
//   + <u> <v>
//   - <u> <v>
// '#' starts a comment line; blank lines are skipped. Vertex ids are 0-based.
// A stream always starts from the empty graph, so inserting a present edge or
// deleting an absent one is a parse error.
struct Stream {
  VertexId n = 0;
  int k = 1;
  std::vector<UpdateEvent> events;
};

Stream parse_stream(std::string_view text);
std::string format_stream(const Stream& s);
Stream load_stream(const std::string& path);

}  // namespace kec
