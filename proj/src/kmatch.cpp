#include "kec/kmatch.hpp"

#include <algorithm>
#include <cmath>

namespace kec {

KMatching::KMatching(VertexId n, int k) : load_(n, 0), k_(k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
}

void KMatching::add(Edge e) {
  if (contains(e)) throw ContractViolation("edge already matched");
  if (load_.at(e.u) >= k_ || load_.at(e.v) >= k_)
    throw ContractViolation("adding edge would saturate an endpoint");
  edges_.insert(e);
  ++load_[e.u];
  ++load_[e.v];
}

void KMatching::remove(Edge e) {
  if (edges_.erase(e) == 0) throw ContractViolation("edge not matched");
  --load_[e.u];
  --load_[e.v];
}

MaximalKMatcher::MaximalKMatcher(VertexId n, int k) : g_(n), m_(n, k) {}

MaximalKMatcher::Delta MaximalKMatcher::insert(Edge e) {
  g_.insert_edge(e);
  Delta d;
  if (!m_.saturated(e.u) && !m_.saturated(e.v)) {
    m_.add(e);
    d.added.push_back(e);
  }
  return d;
}

MaximalKMatcher::Delta MaximalKMatcher::erase(Edge e) {
  g_.delete_edge(e);
  Delta d;
  if (m_.contains(e)) {
    m_.remove(e);
    d.removed.push_back(e);
  }
  // freed capacity can unblock at most one edge per endpoint; scanning in
  // ascending neighbor order keeps the choice deterministic
  for (VertexId w : {e.u, e.v}) {
    for (VertexId z : g_.neighbors(w)) {
      if (m_.saturated(w)) break;
      Edge cand(w, z);
      if (m_.contains(cand) || m_.saturated(z)) continue;
      m_.add(cand);
      d.added.push_back(cand);
    }
  }
  return d;
}

MaximalKMatcher::Delta MaximalKMatcher::apply(const UpdateEvent& ev) {
  return ev.kind == UpdateKind::Insert ? insert(ev.edge) : erase(ev.edge);
}

namespace {

long long rebuild_threshold(double eps, long long twice_value) {
  double c = static_cast<double>(twice_value) / 2.0;
  auto t = static_cast<long long>(std::floor(eps * c + 1e-9));
  return std::max<long long>(1, t);
}

}  // namespace

FractionalMatcher::FractionalMatcher(VertexId n, int k, double epsilon)
    : g_(n), x_(n), k_(k), eps_(epsilon) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (!(epsilon > 0.0)) throw ContractViolation("epsilon must be positive");
}

long long FractionalMatcher::updates_until_rebuild() const {
  return rebuild_threshold(eps_, twice_value_at_rebuild_) -
         updates_since_rebuild_;
}

std::vector<FractionalMatcher::ValueChange> FractionalMatcher::apply(
    const UpdateEvent& ev) {
  last_rebuilt_ = false;
  std::vector<ValueChange> changes;
  if (ev.kind == UpdateKind::Insert) {
    g_.insert_edge(ev.edge);  // a fresh edge carries value 0 until a rebuild
  } else {
    g_.delete_edge(ev.edge);
    int old = x_.twice(ev.edge);
    if (old != 0) {
      x_.set_twice(ev.edge, 0);
      changes.push_back({ev.edge, old, 0});
    }
  }
  ++updates_since_rebuild_;
  if (updates_since_rebuild_ >=
      rebuild_threshold(eps_, twice_value_at_rebuild_))
    rebuild(changes);
  std::sort(changes.begin(), changes.end(),
            [](const ValueChange& a, const ValueChange& b) { return a.e < b.e; });
  return changes;
}

void FractionalMatcher::rebuild(std::vector<ValueChange>& out) {
  FractionalAssignment fresh =
      half_integral_optimum(g_, BVector::uniform(g_.num_vertices(), k_));
  for (Edge e : g_.edge_list()) {
    int old = x_.twice(e), now = fresh.twice(e);
    if (old != now) out.push_back({e, old, now});
  }
  // anything still supported by x_ on a deleted edge would be a bug; the
  // per-delete zeroing above guarantees support(x) is inside the graph
  x_ = std::move(fresh);
  twice_value_at_rebuild_ = x_.twice_value();
  updates_since_rebuild_ = 0;
  last_rebuilt_ = true;
  ++rebuilds_;
}

}  // namespace kec
