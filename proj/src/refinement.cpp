#include "asrefine/refinement.hpp"

namespace asrefine {

NonRefinementConstraint build_nonrefinement_constraint(const Model& orig, const Model& mut,
                                                       int mut_action_index,
                                                       const StepVarSpace& space)
{
  const Action& act = mut.actions[static_cast<size_t>(mut_action_index)];

  // The mutant action's behavior is the union of its do-od alternatives.
  std::vector<Formula> mut_alts;
  for (const auto& entry : mut.dood) {
    if (entry.action_index == mut_action_index)
      mut_alts.push_back(translate_dood_entry(mut, entry, space));
  }

  std::vector<Formula> orig_alts;
  for (const auto& entry : orig.dood) {
    const Action& oa = orig.actions[static_cast<size_t>(entry.action_index)];
    if (oa.label == act.label)
      orig_alts.push_back(translate_dood_entry(orig, entry, space));
  }

  Formula mut_side = Formula::disj(std::move(mut_alts));
  Formula orig_side = Formula::disj(std::move(orig_alts));

  NonRefinementConstraint c;
  c.action_index = mut_action_index;
  c.label = act.label;
  c.trivially_unsat = (mut_side == orig_side);

  std::vector<Formula> parts;
  parts.push_back(std::move(mut_side));
  parts.push_back(negate(orig_side));
  c.formula = Formula::conj(std::move(parts));
  return c;
}

MutatedActionFinder::MutatedActionFinder(const Model& orig, const Model& mut,
                                         const StepVarSpace& space, const Budget& budget)
    : orig_(orig), mut_(mut), space_(space), budget_(budget)
{
  // Definition order, restricted to actions the do-od block can execute.
  for (size_t i = 0; i < mut_.actions.size(); ++i) {
    for (const auto& entry : mut_.dood) {
      if (entry.action_index == static_cast<int>(i)) {
        order_.push_back(static_cast<int>(i));
        break;
      }
    }
  }
}

std::optional<NonRefinementConstraint> MutatedActionFinder::next(SolverStats* stats)
{
  while (pos_ < order_.size()) {
    int idx = order_[pos_++];
    NonRefinementConstraint c = build_nonrefinement_constraint(orig_, mut_, idx, space_);
    if (c.trivially_unsat)  // A ∧ ¬A: nothing for the solver to decide
      continue;
    FDProblem p;
    p.domains = space_.domains;
    p.formula = &c.formula;
    SolveResult r = solve(p, budget_, stats);
    switch (r.status) {
      case SolveStatus::Sat:
        return c;
      case SolveStatus::Unsat:
        break;
      case SolveStatus::NodeLimit:
      case SolveStatus::Timeout:
        skipped_.emplace_back(idx, r.status);
        break;
    }
  }
  return std::nullopt;
}

std::optional<NonRefinementConstraint> find_mutated_action(const Model& orig, const Model& mut,
                                                           const StepVarSpace& space,
                                                           const Budget& budget,
                                                           SolverStats* stats)
{
  MutatedActionFinder finder(orig, mut, space, budget);
  return finder.next(stats);
}

}  // namespace asrefine
