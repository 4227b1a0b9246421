#pragma once

#include <memory>
#include <optional>

#include "kec/coloring.hpp"
#include "kec/graph.hpp"
#include "kec/kmatch.hpp"
#include "kec/sparsifier.hpp"

namespace kec {

enum class PipelineVariant { MatchO, MatchA, BipartiteO, BipartiteA };

// Updates allowed between full recolorings: max(1, floor(eps * colored)) as
// of the last recoloring.
struct AmortizationBudget {
  int colored_at_reset = 0;
  int remaining = 1;

  void reset(double eps, int colored);
};

// Matcher-then-color pipelines. Each update goes to the matcher immediately;
// the output coloring is only patched down (deleted edges lose their color,
// inserted edges stay uncolored) until the budget runs out, then the current
// matching is recolored from scratch.
//
//   MatchO     maximal k-matching -> vizing_color -> discard to k colors
//   MatchA     sparsified fractional optimum, rounded -> vizing -> discard
//   Bipartite* the same matchers, colored with bipartite_color (k colors,
//              nothing discarded)
class Pipeline {
 public:
  Pipeline(PipelineVariant variant, VertexId n, int k, double epsilon,
           std::uint64_t seed);

  void apply(const UpdateEvent& ev);

  PipelineVariant variant() const { return variant_; }
  int k() const { return k_; }
  double epsilon() const { return eps_; }
  const DynamicGraph& graph() const;
  const PartialColoring& coloring() const { return out_; }

  bool last_apply_recolored() const { return last_recolored_; }
  long long recolor_count() const { return recolors_; }
  long long matcher_size() const;  // |M|, or floor(c(x)) for MatchA
  std::optional<std::size_t> sparsifier_size() const;
  const AmortizationBudget& budget() const { return budget_; }

  const MaximalKMatcher* maximal() const { return maximal_.get(); }
  const FractionalMatcher* fractional() const { return fractional_.get(); }
  const Sparsifier* sparsifier() const { return sparsifier_.get(); }
  // k-matching installed by the last recoloring (empty before the first)
  const std::vector<Edge>& last_matching() const { return last_matching_; }

  // drops one colored edge without bookkeeping; only for fault-injection
  // in `verify`
  void debug_drop_one_colored();

 private:
  void recolor();

  PipelineVariant variant_;
  int k_;
  double eps_;
  std::unique_ptr<MaximalKMatcher> maximal_;
  std::unique_ptr<FractionalMatcher> fractional_;
  std::unique_ptr<Sparsifier> sparsifier_;
  PartialColoring out_;
  AmortizationBudget budget_;
  std::vector<Edge> last_matching_;
  bool last_recolored_ = false;
  long long recolors_ = 0;
};

}  // namespace kec
