#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asrefine/fd_solver.hpp"
#include "asrefine/semantics.hpp"

namespace asrefine {

// For one mutant action A: the step formula "A executes, and no original
// action with the same label can execute the same step". States whose pinning
// makes this satisfiable are unsafe; the satisfying valuation decodes into
// the diverging (event, post).
//
// Only same-label original alternatives are negated: every translated action
// pins the shared label variable to its own code, so the negation of a
// differently-labeled original is entailed and would only bloat the formula.
// A mutant label the original lacks therefore gets no negations at all.
struct NonRefinementConstraint
{
  int action_index = -1;  // into the mutant's actions
  std::string label;
  Formula formula;
  // The mutant side and the original side came out structurally identical,
  // so the conjunction is F ∧ ¬F — pointwise false. Callers skip the solver;
  // only syntactically changed actions cost a solve.
  bool trivially_unsat = false;
};

NonRefinementConstraint build_nonrefinement_constraint(const Model& orig, const Model& mut,
                                                       int mut_action_index,
                                                       const StepVarSpace& space);

// Locates actions whose non-refinement constraint is satisfiable somewhere in
// the full state box (reachability comes later). Iterates the mutant's
// actions in definition order, restricted to actions its do-od block actually
// references; resumable, so a caller whose reachability check fails can ask
// for the next candidate. Structurally unchanged actions are dismissed
// without a solver call (their constraint is trivially_unsat); actions whose
// solve hits a resource limit are recorded in skipped() and do not stop the
// iteration.
class MutatedActionFinder
{
 public:
  MutatedActionFinder(const Model& orig, const Model& mut, const StepVarSpace& space,
                      const Budget& budget = {});

  std::optional<NonRefinementConstraint> next(SolverStats* stats = nullptr);
  const std::vector<std::pair<int, SolveStatus>>& skipped() const { return skipped_; }

 private:
  const Model& orig_;
  const Model& mut_;
  const StepVarSpace& space_;
  Budget budget_;
  std::vector<int> order_;  // action indices to visit
  size_t pos_ = 0;
  std::vector<std::pair<int, SolveStatus>> skipped_;
};

// First candidate or nullopt (a genuine unbounded equivalence proof for the
// whole system when combined with an empty skipped list).
std::optional<NonRefinementConstraint> find_mutated_action(const Model& orig, const Model& mut,
                                                           const StepVarSpace& space,
                                                           const Budget& budget = {},
                                                           SolverStats* stats = nullptr);

}  // namespace asrefine
