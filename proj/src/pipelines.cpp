#include "kec/pipelines.hpp"

#include <algorithm>
#include <cmath>

#include "kec/polytope.hpp"

namespace kec {

void AmortizationBudget::reset(double eps, int colored) {
  colored_at_reset = colored;
  remaining =
      std::max(1, static_cast<int>(std::floor(eps * colored + 1e-9)));
}

namespace {

bool uses_fractional(PipelineVariant v) {
  return v == PipelineVariant::MatchA || v == PipelineVariant::BipartiteA;
}

bool uses_bipartite_coloring(PipelineVariant v) {
  return v == PipelineVariant::BipartiteO || v == PipelineVariant::BipartiteA;
}

}  // namespace

Pipeline::Pipeline(PipelineVariant variant, VertexId n, int k, double epsilon,
                   std::uint64_t seed)
    : variant_(variant), k_(k), eps_(epsilon), out_(n, k) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ContractViolation("epsilon must be positive and finite");
  if (uses_fractional(variant)) {
    fractional_ = std::make_unique<FractionalMatcher>(n, k, epsilon);
    sparsifier_ = std::make_unique<Sparsifier>(n, k, epsilon, seed);
  } else {
    maximal_ = std::make_unique<MaximalKMatcher>(n, k);
  }
}

const DynamicGraph& Pipeline::graph() const {
  return maximal_ ? maximal_->graph() : fractional_->graph();
}

long long Pipeline::matcher_size() const {
  if (maximal_) return static_cast<long long>(maximal_->matching().size());
  return fractional_->assignment().twice_value() / 2;
}

std::optional<std::size_t> Pipeline::sparsifier_size() const {
  if (!sparsifier_) return std::nullopt;
  return sparsifier_->tracked_edges();
}

void Pipeline::apply(const UpdateEvent& ev) {
  last_recolored_ = false;

  if (maximal_) {
    maximal_->apply(ev);
  } else {
    for (const auto& vc : fractional_->apply(ev))
      sparsifier_->apply_value_change(vc.e, vc.old_twice / 2.0,
                                      vc.new_twice / 2.0);
  }

  // between recolorings the output is only patched down: a deleted edge
  // loses its color, an inserted one waits uncolored
  if (ev.kind == UpdateKind::Delete && out_.is_colored(ev.edge))
    out_.unassign(ev.edge);

  --budget_.remaining;
  if (budget_.remaining <= 0) {
    recolor();
    budget_.reset(eps_, out_.colored_count());
    last_recolored_ = true;
    ++recolors_;
  }
}

void Pipeline::recolor() {
  VertexId n = graph().num_vertices();

  std::vector<Edge> matching;
  if (maximal_) {
    matching.assign(maximal_->matching().edges().begin(),
                    maximal_->matching().edges().end());
  } else {
    BVector b = BVector::uniform(n, k_);
    DynamicGraph h(n);
    for (Edge e : sparsifier_->request(Sparsifier::default_d(k_, eps_)))
      h.insert_edge(e);
    matching = round_half_integral(half_integral_optimum(h, b), b);
  }

  DynamicGraph sub(n);
  for (Edge e : matching) sub.insert_edge(e);

  if (uses_bipartite_coloring(variant_)) {
    auto side = try_bipartition(sub);
    if (!side)
      throw ColoringError("matching subgraph is not bipartite");
    // palette is max_degree(sub) <= k, so the discard step only widens
    out_ = discard_least_used(bipartite_color(sub, *side), k_);
  } else {
    out_ = discard_least_used(vizing_color(sub), k_);
  }
  last_matching_ = std::move(matching);
}

void Pipeline::debug_drop_one_colored() {
  const auto& assigned = out_.assignment();
  if (assigned.empty()) return;
  Edge victim = assigned.begin()->first;
  for (const auto& [e, c] : assigned) victim = std::min(victim, e);
  out_.unassign(victim);
}

}  // namespace kec
