#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asrefine/interpreter.hpp"
#include "asrefine/mutation.hpp"
#include "asrefine/refinement.hpp"
#include "asrefine/reachability.hpp"

namespace asrefine {

// Final per-mutant classification.
//   nonconforming  unsafe state reachable; counterexample attached
//   equiv_proved   no action has a satisfiable non-refinement constraint
//                  anywhere in the state box (unbounded equivalence proof)
//   equiv_bounded  candidates exist but none is reachable within the depth
//                  bound (equivalence only up to that bound)
//   inconclusive   some check hit a resource limit; equivalence NOT claimed
enum class ReportVerdict { NonConforming, EquivProved, EquivBounded, Inconclusive };

const char* to_string(ReportVerdict v);

struct CheckOptions
{
  int max_depth = 20;
  Budget solver_budget;
  ExplicitLimits explicit_limits;
};

struct EngineOutcome
{
  ReportVerdict verdict = ReportVerdict::Inconclusive;
  std::optional<State> unsafe;
  std::vector<Event> trace;
  std::optional<Witness> witness;
  int mutated_action = -1;    // symbolic: action whose constraint fired
  std::string note;           // inconclusive reasons, skipped actions
  double find_s = 0.0;        // candidate location phase
  double reach_s = 0.0;       // reachability phase
  double total_s = 0.0;
  SolverStats solver;         // symbolic engine
  ExplicitStats explicit_stats;
};

// Symbolic pipeline: locate candidate actions (resumable), then bounded
// breadth-first reachability per candidate. A reachable unsafe state wins
// outright; otherwise any resource limit forces Inconclusive, any unreachable
// candidate downgrades the proof to equiv_bounded.
EngineOutcome check_symbolic(const Model& orig, const Model& mut, const CheckOptions& opts);

// Explicit-enumeration pipeline on the same options. Its Conforming verdict
// maps to equiv_bounded: brute force can never prove unbounded equivalence.
EngineOutcome check_explicit(const Model& orig, const Model& mut, const CheckOptions& opts);

enum class EngineSel { Symbolic, Explicit, Both };

struct BatchOptions
{
  CheckOptions check;
  MutationOps ops;
  EngineSel engine = EngineSel::Symbolic;
  int jobs = 0;  // worker threads; 0 = hardware concurrency
  bool include_original = true;
};

struct MutantRow
{
  int id = 0;  // 0 is the unmutated original when include_original is set
  std::optional<MutantSpec> spec;
  std::optional<EngineOutcome> symbolic;
  std::optional<EngineOutcome> explicit_outcome;
  bool agree = true;  // meaningful only when both engines ran
};

struct BatchSummary
{
  int nonconforming = 0;
  int equiv_proved = 0;
  int equiv_bounded = 0;
  int inconclusive = 0;
  int disagreements = 0;
};

struct BatchResult
{
  std::vector<MutantRow> rows;  // ordered by id regardless of job count
  BatchSummary summary;         // counts over the primary engine's verdicts
  double wall_s = 0.0;
};

// Engine agreement for one row: verdict classes must match (equiv_proved and
// equiv_bounded both count as conforming), and non-conforming rows must agree
// on the unsafe state and trace length.
bool outcomes_agree(const EngineOutcome& sym, const EngineOutcome& exp);

BatchResult run_batch(const Model& orig, const BatchOptions& opts);

}  // namespace asrefine
