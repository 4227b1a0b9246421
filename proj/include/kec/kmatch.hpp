#pragma once

#include <set>
#include <vector>

#include "kec/graph.hpp"
#include "kec/polytope.hpp"

namespace kec {

// An edge set with at most k edges at every vertex.
class KMatching {
 public:
  KMatching(VertexId n, int k);

  int k() const { return k_; }
  std::size_t size() const { return edges_.size(); }
  bool contains(Edge e) const { return edges_.count(e) != 0; }
  int load(VertexId v) const { return load_.at(v); }
  bool saturated(VertexId v) const { return load_.at(v) >= k_; }

  void add(Edge e);     // e absent, both loads below k
  void remove(Edge e);  // e present

  const std::set<Edge>& edges() const { return edges_; }

 private:
  std::set<Edge> edges_;
  std::vector<int> load_;
  int k_;
};

// Maximal k-matching maintained greedily. Invariant: every present edge
// outside the matching has a saturated endpoint.
class MaximalKMatcher {
 public:
  MaximalKMatcher(VertexId n, int k);

  struct Delta {
    std::vector<Edge> added;
    std::vector<Edge> removed;
  };

  Delta insert(Edge e);
  Delta erase(Edge e);
  Delta apply(const UpdateEvent& ev);

  const DynamicGraph& graph() const { return g_; }
  const KMatching& matching() const { return m_; }

 private:
  DynamicGraph g_;
  KMatching m_;
};

// Fractional k-matching maintained by periodic rebuild: the optimum is
// recomputed from scratch every max(1, floor(eps * value-at-last-rebuild))
// updates; in between, deletions zero out their edge and insertions leave
// the assignment untouched.
class FractionalMatcher {
 public:
  FractionalMatcher(VertexId n, int k, double epsilon);

  struct ValueChange {
    Edge e;
    int old_twice = 0;
    int new_twice = 0;
  };

  // returns the x changes caused by this update, sorted by edge
  std::vector<ValueChange> apply(const UpdateEvent& ev);

  const DynamicGraph& graph() const { return g_; }
  const FractionalAssignment& assignment() const { return x_; }
  int k() const { return k_; }
  double epsilon() const { return eps_; }
  bool last_apply_rebuilt() const { return last_rebuilt_; }
  long long rebuild_count() const { return rebuilds_; }
  long long updates_until_rebuild() const;

 private:
  void rebuild(std::vector<ValueChange>& out);

  DynamicGraph g_;
  FractionalAssignment x_;
  int k_;
  double eps_;
  long long updates_since_rebuild_ = 0;
  long long twice_value_at_rebuild_ = 0;
  bool last_rebuilt_ = false;
  long long rebuilds_ = 0;
};

}  // namespace kec
