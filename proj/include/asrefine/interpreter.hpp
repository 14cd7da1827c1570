#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "asrefine/ast.hpp"
#include "asrefine/state.hpp"

namespace asrefine {

// Counters for the explicit engine. `candidates` counts parameter tuples
// evaluated (the quantity that explodes with domain size); `transitions`
// counts feasible (event, post) pairs actually produced.
struct ExplicitStats
{
  uint64_t candidates = 0;
  uint64_t transitions = 0;
  uint64_t states_expanded = 0;
  double time_s = 0.0;

  void add(const ExplicitStats& o)
  {
    candidates += o.candidates;
    transitions += o.transitions;
    states_expanded += o.states_expanded;
    time_s += o.time_s;
  }
};

struct ExplicitLimits
{
  uint64_t max_candidates = 1'000'000;
  double timeout_s = 60.0;
};

// All steps of `m` from state `s`, computed by brute force: every do-od
// alternative is tried with every parameter tuple drawn from the full bound
// type domains. This is the deliberately explosive baseline the symbolic
// engine is measured against; it shares no code with the translation or the
// solver. Results are sorted by (action definition index, args, post) and
// deduplicated.
std::vector<std::pair<Event, State>> interpret_step(const Model& m, const State& s,
                                                    ExplicitStats* stats = nullptr);

// Explicit refinement check: breadth-first search over the original's
// reachable states; a state is unsafe when the mutant has a step there that
// the original lacks. Mirrors the symbolic search's expansion order exactly
// (same sort key), so verdicts, unsafe states and traces are comparable
// one-to-one. Budget exhaustion yields an Inconclusive verdict.
Verdict explicit_check(const Model& orig, const Model& mut, int max_depth,
                       const ExplicitLimits& limits = {}, ExplicitStats* stats = nullptr);

}  // namespace asrefine
