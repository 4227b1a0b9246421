#include "kec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace kec {

StreamParseError::StreamParseError(int line_, const std::string& msg)
    : std::runtime_error("stream line " + std::to_string(line_) + ": " + msg),
      line(line_) {}

Edge::Edge(VertexId a, VertexId b) {
  if (a == b)
    throw ContractViolation("self-loop (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
  u = std::min(a, b);
  v = std::max(a, b);
}

DynamicGraph::DynamicGraph(VertexId n) : adj_(n), deg_hist_(1, n) {}

void DynamicGraph::check_vertex(VertexId v) const {
  if (v >= adj_.size())
    throw ContractViolation("vertex " + std::to_string(v) + " out of range [0," +
                            std::to_string(adj_.size()) + ")");
}

bool DynamicGraph::has_edge(Edge e) const {
  if (e.u >= adj_.size() || e.v >= adj_.size()) return false;
  const auto& nu = adj_[e.u];
  return std::binary_search(nu.begin(), nu.end(), e.v);
}

void DynamicGraph::bump_degree(VertexId v, int delta) {
  std::size_t old_d = adj_[v].size();
  std::size_t new_d = old_d + delta;
  if (new_d >= deg_hist_.size()) deg_hist_.resize(new_d + 1, 0);
  --deg_hist_[old_d];
  ++deg_hist_[new_d];
  if (new_d > max_deg_) {
    max_deg_ = new_d;
  } else {
    while (max_deg_ > 0 && deg_hist_[max_deg_] == 0) --max_deg_;
  }
}

void DynamicGraph::insert_edge(Edge e) {
  check_vertex(e.u);
  check_vertex(e.v);
  auto& nu = adj_[e.u];
  auto it = std::lower_bound(nu.begin(), nu.end(), e.v);
  if (it != nu.end() && *it == e.v)
    throw ContractViolation("insert of present edge (" + std::to_string(e.u) +
                            "," + std::to_string(e.v) + ")");
  bump_degree(e.u, +1);
  bump_degree(e.v, +1);
  nu.insert(it, e.v);
  auto& nv = adj_[e.v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), e.u), e.u);
  ++m_;
}

void DynamicGraph::delete_edge(Edge e) {
  check_vertex(e.u);
  check_vertex(e.v);
  auto& nu = adj_[e.u];
  auto it = std::lower_bound(nu.begin(), nu.end(), e.v);
  if (it == nu.end() || *it != e.v)
    throw ContractViolation("delete of absent edge (" + std::to_string(e.u) +
                            "," + std::to_string(e.v) + ")");
  bump_degree(e.u, -1);
  bump_degree(e.v, -1);
  nu.erase(it);
  auto& nv = adj_[e.v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), e.u));
  --m_;
}

bool DynamicGraph::apply(const UpdateEvent& ev) {
  check_vertex(ev.edge.u);
  check_vertex(ev.edge.v);
  bool present = has_edge(ev.edge);
  if (ev.kind == UpdateKind::Insert) {
    if (present) return false;
    insert_edge(ev.edge);
  } else {
    if (!present) return false;
    delete_edge(ev.edge);
  }
  return true;
}

std::size_t DynamicGraph::degree(VertexId v) const {
  check_vertex(v);
  return adj_[v].size();
}

const std::vector<VertexId>& DynamicGraph::neighbors(VertexId v) const {
  check_vertex(v);
  return adj_[v];
}

std::vector<Edge> DynamicGraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (VertexId u = 0; u < adj_.size(); ++u)
    for (VertexId v : adj_[u])
      if (v > u) out.push_back(Edge(u, v));
  return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

std::uint64_t parse_uint(std::string_view tok, int line, const char* what,
                         std::uint64_t max) {
  std::uint64_t val = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), val);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw StreamParseError(line, std::string("bad ") + what + " '" +
                                     std::string(tok) + "'");
  if (val > max)
    throw StreamParseError(line, std::string(what) + " " + std::to_string(val) +
                                     " out of range (max " +
                                     std::to_string(max) + ")");
  return val;
}

}  // namespace

Stream parse_stream(std::string_view text) {
  Stream s;
  bool have_header = false;
  std::unordered_set<Edge, EdgeHash> present;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (!have_header) {
      if (toks[0] != "H")
        throw StreamParseError(line_no, "expected header 'H <n> <k>'");
      if (toks.size() != 3)
        throw StreamParseError(line_no, "header needs exactly n and k");
      s.n = static_cast<VertexId>(
          parse_uint(toks[1], line_no, "n", std::uint32_t(-1)));
      std::uint64_t k = parse_uint(toks[2], line_no, "k", 1u << 30);
      if (k < 1) throw StreamParseError(line_no, "k must be >= 1");
      s.k = static_cast<int>(k);
      have_header = true;
      continue;
    }

    if (toks[0] != "+" && toks[0] != "-")
      throw StreamParseError(line_no,
                             "unknown op '" + std::string(toks[0]) + "'");
    if (toks.size() != 3)
      throw StreamParseError(line_no, "op needs exactly two vertex ids");
    if (s.n == 0) throw StreamParseError(line_no, "event in a 0-vertex stream");
    auto u = static_cast<VertexId>(parse_uint(toks[1], line_no, "u", s.n - 1));
    auto v = static_cast<VertexId>(parse_uint(toks[2], line_no, "v", s.n - 1));
    if (u == v) throw StreamParseError(line_no, "self-loop");

    Edge e(u, v);
    if (toks[0] == "+") {
      if (!present.insert(e).second)
        throw StreamParseError(line_no, "insert of present edge");
      s.events.push_back({UpdateKind::Insert, e});
    } else {
      if (present.erase(e) == 0)
        throw StreamParseError(line_no, "delete of absent edge");
      s.events.push_back({UpdateKind::Delete, e});
    }
  }

  if (!have_header) throw StreamParseError(line_no, "missing header");
  return s;
}

std::string format_stream(const Stream& s) {
  std::ostringstream out;
  out << "H " << s.n << ' ' << s.k << '\n';
  for (const auto& ev : s.events)
    out << (ev.kind == UpdateKind::Insert ? '+' : '-') << ' ' << ev.edge.u
        << ' ' << ev.edge.v << '\n';
  return out.str();
}

Stream load_stream(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open stream file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stream(buf.str());
}

}  // namespace kec
