#include "kec/greedy.hpp"

namespace kec {

GreedyState::GreedyState(VertexId n, int k) : g_(n), f_(n, k), k_(k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
}

Color GreedyState::insert(Edge e) {
  g_.insert_edge(e);
  last_colors_examined_ = 0;
  last_candidates_scanned_ = 0;
  Color c = f_.common_free_color(e.u, e.v, last_colors_examined_);
  if (c != kNoColor) f_.assign(e, c);
  total_colors_examined_ += last_colors_examined_;
  return c;
}

std::vector<Edge> GreedyState::erase(Edge e) {
  Color c = f_.unassign(e);
  g_.delete_edge(e);
  last_colors_examined_ = 0;
  last_candidates_scanned_ = 0;
  std::vector<Edge> repaired;
  if (c != kNoColor) {
    // freeing c at the endpoints is the only change, so handing c to one
    // uncolored edge per endpoint restores maximality
    for (VertexId w : {e.u, e.v}) {
      if (!f_.is_free(w, c)) continue;  // taken by the other endpoint's repair
      for (VertexId z : g_.neighbors(w)) {
        ++last_candidates_scanned_;
        Edge cand(w, z);
        if (f_.is_colored(cand)) continue;
        if (f_.is_free(z, c)) {
          f_.assign(cand, c);
          repaired.push_back(cand);
          break;
        }
      }
    }
  }
  total_candidates_scanned_ += last_candidates_scanned_;
  return repaired;
}

void GreedyState::apply(const UpdateEvent& ev) {
  if (ev.kind == UpdateKind::Insert)
    insert(ev.edge);
  else
    erase(ev.edge);
}

}  // namespace kec
