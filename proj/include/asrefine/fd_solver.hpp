#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asrefine/formula.hpp"
#include "asrefine/semantics.hpp"

namespace asrefine {

// A finite-domain problem: one box domain per variable (index = VarId,
// registration order) plus a formula over those variables. `extra` holds
// additional conjuncts owned by the problem (the main formula is borrowed so
// large step relations are shared across thousands of solve calls).
struct FDProblem
{
  std::vector<Domain> domains;
  const Formula* formula = nullptr;
  std::vector<Formula> extra;
};

enum class SolveStatus { Sat, Unsat, NodeLimit, Timeout };

const char* to_string(SolveStatus s);

// Resource limits per solve call. NodeLimit/Timeout results are reported
// distinctly from Unsat; callers must treat them as "unknown".
struct Budget
{
  uint64_t max_nodes = 1'000'000;
  double timeout_s = 10.0;
};

struct SolverStats
{
  uint64_t solve_calls = 0;
  uint64_t nodes = 0;
  uint64_t backtracks = 0;
  double time_s = 0.0;

  void add(const SolverStats& o)
  {
    solve_calls += o.solve_calls;
    nodes += o.nodes;
    backtracks += o.backtracks;
    time_s += o.time_s;
  }
};

struct SolveResult
{
  SolveStatus status = SolveStatus::Unsat;
  std::vector<int64_t> values;  // one per variable, engaged iff Sat
};

// Depth-first search with bounds-consistency propagation on linear atoms.
// Disjunctions are handled by splitting on the first unresolved Or node (in
// formula order); ground search labels the lowest-indexed unbound variable,
// preferring smaller values. Fully deterministic: equal inputs give equal
// results, node counts included.
SolveResult solve(const FDProblem& p, const Budget& budget = {}, SolverStats* stats = nullptr);

struct EnumerateResult
{
  // Terminating condition: Unsat = enumeration exhausted (complete),
  // Sat = max_solutions cap hit, NodeLimit/Timeout = resources exhausted.
  SolveStatus status = SolveStatus::Unsat;
  bool complete = false;
  // Distinct projected tuples, sorted lexicographically ascending.
  std::vector<std::vector<int64_t>> tuples;
};

// All distinct values of `projection` over the problem's solutions, collected
// in a single exhaustive search (one solve call). Partial results are
// returned when a budget trips.
EnumerateResult enumerate(const FDProblem& p, const std::vector<VarId>& projection,
                          uint64_t max_solutions, const Budget& budget = {},
                          SolverStats* stats = nullptr);

// Root propagation only (no search): the narrowed domains, or nullopt when
// propagation alone refutes the problem. Every solution of the problem lies
// inside the returned boxes.
std::optional<std::vector<Domain>> propagate_root(const FDProblem& p);

}  // namespace asrefine
