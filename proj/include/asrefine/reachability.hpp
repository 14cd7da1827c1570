#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "asrefine/fd_solver.hpp"
#include "asrefine/semantics.hpp"
#include "asrefine/state.hpp"

namespace asrefine {

// All (event, post) steps the step relation `system` allows from `s`,
// obtained by pinning the pre-state and enumerating (label, args, post)
// projections. Sorted ascending by that projection — the same order the
// explicit interpreter produces — so the two engines expand states
// identically. A non-Sat terminating status signals a resource limit.
struct SuccessorsResult
{
  SolveStatus status = SolveStatus::Unsat;  // Unsat = enumeration complete
  std::vector<std::pair<Event, State>> steps;
};

SuccessorsResult successors(const StepVarSpace& space, const Formula& system, const State& s,
                            const Budget& budget = {}, SolverStats* stats = nullptr);

// One solve of `constraint` with the pre-state pinned to `s`: Sat means `s`
// is unsafe and the decoded (event, post) is the diverging step.
struct UnsafeResult
{
  SolveStatus status = SolveStatus::Unsat;
  std::optional<Witness> witness;
};

UnsafeResult check_unsafe(const StepVarSpace& space, const Formula& constraint, const State& s,
                          const Budget& budget = {}, SolverStats* stats = nullptr);

// Optional instrumentation: expansion order and depths, for search-shape
// assertions in tests.
struct ReachProbe
{
  std::vector<std::pair<State, int>> expanded;
};

// Breadth-first reachability from `init` under the original's step relation,
// checking every newly reached state against the non-refinement constraint.
// Depth is counted in transitions from init; states at depth == max_depth are
// still checked but not expanded. Returns the first unsafe state in BFS order
// with its shortest trace, Conforming(max_depth) when the bounded search is
// exhausted, or Inconclusive when a solver call hits its budget.
Verdict reach_non_refine(const StepVarSpace& space, const Formula& system,
                         const Formula& constraint, const State& init, int max_depth,
                         const Budget& budget = {}, SolverStats* stats = nullptr,
                         ReachProbe* probe = nullptr);

}  // namespace asrefine
