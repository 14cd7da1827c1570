#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "asrefine/ast.hpp"
#include "asrefine/formula.hpp"

namespace asrefine {

struct Domain
{
  int64_t lo = 0;
  int64_t hi = -1;

  bool empty() const { return lo > hi; }
  int64_t size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(int64_t v) const { return v >= lo && v <= hi; }
  bool operator==(const Domain&) const = default;
};

// Solver-variable layout for one transition step:
//
//   [0, n)                pre-state (one per state variable)
//   [n, 2n)               post-state
//   2n                    event label (code per action label)
//   [2n+1, 2n+1+w)        event arguments, w = max action arity
//
// Every action formula pins the label variable to its own code and pins the
// argument slots beyond its arity to 0, so a satisfying assignment decodes
// uniquely into (pre, event, post).
struct StepVarSpace
{
  int n = 0;
  int arg_width = 0;
  std::vector<Domain> domains;      // size num_vars()
  std::vector<std::string> names;   // solver-facing names (x, x', event, arg0, ...)
  std::vector<std::string> labels;  // label code -> action label
  std::vector<int> arities;         // label code -> arity

  int pre(int i) const { return i; }
  int post(int i) const { return n + i; }
  int label_var() const { return 2 * n; }
  int arg_var(int k) const { return 2 * n + 1 + k; }
  int num_vars() const { return 2 * n + 1 + arg_width; }
  int label_code(const std::string& label) const;
};

// Builds the shared space for one or two models (original + mutant). The two
// models must declare the same state vector; labels are coded in the first
// model's definition order, then any labels only the second model has.
StepVarSpace make_step_space(const Model& m, const Model* other = nullptr);

using StepFormula = Formula;

struct TranslateError : std::runtime_error
{
  SourceLoc loc;
  TranslateError(const std::string& msg, SourceLoc l) : std::runtime_error(msg), loc(l) {}
};

// One action as a transition relation: guard and body hold between pre and
// post, the label variable equals the action's code, argument slots carry the
// parameters (unused slots pinned to 0). Sequential composition is resolved
// by substitution; every assignment additionally constrains the assigned
// expression to the target variable's type range so intermediate values stay
// inside their finite domains. Throws TranslateError on nonlinear arithmetic.
StepFormula translate_action(const Model& m, const Action& a, const StepVarSpace& space);

// Same, but for one do-od alternative: argument domains come from the entry's
// bindings rather than the action's resolved parameter types.
StepFormula translate_dood_entry(const Model& m, const DoodEntry& entry,
                                 const StepVarSpace& space);

// Whole-system step relation: disjunction over all do-od alternatives in
// definition order.
StepFormula translate_system(const Model& m, const StepVarSpace& space);

}  // namespace asrefine
