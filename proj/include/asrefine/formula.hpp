#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asrefine {

// Solver variable index (see StepVarSpace for the step-formula layout).
using VarId = int;

// Sum of integer-scaled variables plus a constant. Terms are sorted by
// variable id and never carry a zero coefficient, so structural equality is
// semantic equality.
struct LinExpr
{
  std::vector<std::pair<VarId, int64_t>> terms;
  int64_t constant = 0;

  bool is_const() const { return terms.empty(); }
  bool operator==(const LinExpr&) const = default;
};

LinExpr lin_var(VarId v);
LinExpr lin_const(int64_t k);
LinExpr lin_add(const LinExpr& a, const LinExpr& b);
LinExpr lin_sub(const LinExpr& a, const LinExpr& b);
LinExpr lin_neg(const LinExpr& a);
LinExpr lin_scale(const LinExpr& a, int64_t k);
// Product; nullopt when both operands contain variables (nonlinear).
std::optional<LinExpr> lin_mul(const LinExpr& a, const LinExpr& b);
int64_t lin_eval(const LinExpr& e, const std::vector<int64_t>& values);

// Atoms are normalized to {expr = 0, expr != 0, expr <= 0}; every comparison
// and every negation maps into this closed set, so formulas are always in
// negation normal form (no Not node exists).
enum class Rel { Eq, Ne, Le };

struct Formula
{
  enum class Kind { True, False, Atom, And, Or };

  Kind kind = Kind::True;
  Rel rel = Rel::Eq;                // Atom only
  LinExpr expr;                     // Atom only
  std::vector<Formula> children;    // And/Or only

  bool operator==(const Formula&) const = default;

  static Formula t();
  static Formula f();
  // Constant operands fold to True/False immediately.
  static Formula atom(LinExpr e, Rel r);
  // Flattens nested Ands, drops True, collapses on False; empty -> True,
  // singleton -> the child itself. disj is the dual.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
};

// Syntactic negation: And/Or swap via De Morgan, atoms flip within the closed
// rel set (!(e<=0) becomes -e+1<=0). Involutive up to structural identity.
Formula negate(const Formula& f);

// Ground evaluation; `values` is indexed by VarId.
bool eval(const Formula& f, const std::vector<int64_t>& values);

// S-expression rendering for --dump-formulas and debugging; names may be
// empty, in which case variables print as v<id>.
std::string to_sexpr(const Formula& f, const std::vector<std::string>& names = {});
std::string to_sexpr(const LinExpr& e, const std::vector<std::string>& names = {});

}  // namespace asrefine
