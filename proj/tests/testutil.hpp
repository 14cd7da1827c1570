#pragma once

// Shared test helpers: parsing with a hard failure on diagnostics, a family
// of small hand-checkable models, a brute-force solution oracle for the
// finite-domain solver, and deterministic random problem generators.

#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "asrefine/diag.hpp"
#include "asrefine/fd_solver.hpp"
#include "asrefine/formula.hpp"
#include "asrefine/parser.hpp"
#include "asrefine/semantics.hpp"

namespace testutil {

using namespace asrefine;

inline Model must_parse(const std::string& text)
{
  ParseResult r = parse_model(text, "<test>");
  REQUIRE_MESSAGE(r.ok(), format_diagnostics(r.diagnostics));
  return std::move(*r.model);
}

// x counts 0..9, one self-incrementing action.
inline std::string counter_text()
{
  return "type(small, X) :- X in 0..9.\n"
         "var([x], small).\n"
         "state_def([x]).\n"
         "init([0]).\n"
         "as :- actions (\n"
         "  'tick'::(x #< 9) => (x := x + 1)\n"
         "), dood ( 'tick' ).\n";
}

// Two variables, one parameterised action, one sequential body whose second
// assignment reads the first one's result.
inline std::string twovar_text()
{
  return "type(quad, X) :- X in 0..3.\n"
         "var([x, y], quad).\n"
         "state_def([x, y]).\n"
         "init([0, 0]).\n"
         "as :- actions (\n"
         "  'set'(V)::(true) => (x := V),\n"
         "  'copy'::(x #\\= y) => (x := y; y := x),\n"
         "  'noop'::(true) => (x := x)\n"
         "), dood ( [V:quad]:'set'(V) [] 'copy' [] 'noop' ).\n";
}

// Three-way choice plus a parameterised guard.
inline std::string branchy_text()
{
  return "type(quad, X) :- X in 0..3.\n"
         "var([x], quad).\n"
         "state_def([x]).\n"
         "init([0]).\n"
         "as :- actions (\n"
         "  'step'::(true) => (  ((x #< 3) => (x := x + 1))\n"
         "                    [] ((x #> 0) => (x := x - 1))\n"
         "                    [] (x := 0) ),\n"
         "  'jump'(K)::(K #> x) => (x := K)\n"
         "), dood ( 'step' [] [K:quad]:'jump'(K) ).\n";
}

// A 0..5 chain. 'ping' fires at x == ping_at, so checking the original
// (ping_at == 5) against a variant with ping_at == d diverges exactly at
// breadth-first depth d.
inline std::string chain_text(int ping_at)
{
  std::ostringstream o;
  o << "type(six, X) :- X in 0..5.\n"
       "var([x], six).\n"
       "state_def([x]).\n"
       "init([0]).\n"
       "as :- actions (\n"
       "  'adv'::(x #< 5) => (x := x + 1),\n"
       "  'ping'::(x #= "
    << ping_at
    << ") => (x := x)\n"
       "), dood ( 'adv' [] 'ping' ).\n";
  return o.str();
}

// Six frozen variables over five values. The action's guard pins p0 = p1 and
// everything else pairwise distinct, so it is satisfiable but never enabled
// from init. Inverting the one equality makes the guard an unsatisfiable
// pigeonhole instance whose refutation needs real search - the fixture for
// budget-exhaustion tests.
inline std::string stress_text()
{
  return "type(hole, X) :- X in 0..4.\n"
         "type(bool, X) :- X in 0..1.\n"
         "var([p0, p1, p2, p3, p4, p5], hole).\n"
         "var([ok], bool).\n"
         "state_def([p0, p1, p2, p3, p4, p5, ok]).\n"
         "init([0, 0, 0, 0, 0, 0, 0]).\n"
         "as :- actions (\n"
         "  'hard'::(p0 #= p1 /\\ p0 #\\= p2 /\\ p0 #\\= p3 /\\ p0 #\\= p4 /\\ p0 #\\= p5\n"
         "        /\\ p1 #\\= p2 /\\ p1 #\\= p3 /\\ p1 #\\= p4 /\\ p1 #\\= p5\n"
         "        /\\ p2 #\\= p3 /\\ p2 #\\= p4 /\\ p2 #\\= p5\n"
         "        /\\ p3 #\\= p4 /\\ p3 #\\= p5\n"
         "        /\\ p4 #\\= p5) => (ok := 1)\n"
         "), dood ( 'hard' ).\n";
}

// 'bump' carries a redundant conjunct (x #= 3 already implies x #< 5), so
// incrementing the 5 yields a semantically equivalent model.
inline std::string redundant_text()
{
  return "type(ten, X) :- X in 0..9.\n"
         "var([x], ten).\n"
         "state_def([x]).\n"
         "init([0]).\n"
         "as :- actions (\n"
         "  'bump'::(x #= 3 /\\ x #< 5) => (x := x + 1),\n"
         "  'step'::(x #< 9) => (x := x + 1)\n"
         "), dood ( 'bump' [] 'step' ).\n";
}

// Brute-force solution oracle: walks the full domain product and evaluates
// the formula (plus extras) on every point. Callers keep the product small.
inline std::vector<std::vector<int64_t>> all_solutions(const FDProblem& p)
{
  std::vector<std::vector<int64_t>> out;
  uint64_t product = 1;
  for (const auto& d : p.domains) {
    if (d.empty()) return out;
    product *= static_cast<uint64_t>(d.size());
    REQUIRE(product <= 2'000'000u);
  }
  std::vector<int64_t> v(p.domains.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = p.domains[i].lo;
  for (;;) {
    bool sat = !p.formula || eval(*p.formula, v);
    for (const auto& f : p.extra) {
      if (!sat) break;
      sat = eval(f, v);
    }
    if (sat) out.push_back(v);
    size_t i = 0;
    while (i < v.size() && v[i] == p.domains[i].hi) {
      v[i] = p.domains[i].lo;
      ++i;
    }
    if (i == v.size()) break;
    ++v[i];
  }
  return out;
}

inline std::vector<std::vector<int64_t>> project_sorted(
    const std::vector<std::vector<int64_t>>& solutions, const std::vector<VarId>& projection)
{
  std::set<std::vector<int64_t>> seen;
  for (const auto& s : solutions) {
    std::vector<int64_t> t;
    t.reserve(projection.size());
    for (VarId v : projection) t.push_back(s[static_cast<size_t>(v)]);
    seen.insert(std::move(t));
  }
  return {seen.begin(), seen.end()};
}

// Deterministic random formulas over a fixed variable box. Coefficients and
// constants are kept small so satisfiable and unsatisfiable instances both
// occur frequently.
class RandomGen
{
 public:
  RandomGen(uint64_t seed, int num_vars, int64_t lo, int64_t hi)
      : rng_(seed), num_vars_(num_vars), lo_(lo), hi_(hi)
  {
  }

  std::vector<Domain> domains() const
  {
    return std::vector<Domain>(static_cast<size_t>(num_vars_), Domain{lo_, hi_});
  }

  int64_t pick(int64_t a, int64_t b)
  {
    return std::uniform_int_distribution<int64_t>(a, b)(rng_);
  }

  LinExpr lin()
  {
    LinExpr e = lin_const(pick(-2 * hi_, 2 * hi_));
    int terms = static_cast<int>(pick(1, 3));
    for (int i = 0; i < terms; ++i) {
      int64_t c = pick(-3, 3);
      if (c == 0) c = 1;
      e = lin_add(e, lin_scale(lin_var(static_cast<VarId>(pick(0, num_vars_ - 1))), c));
    }
    return e;
  }

  Formula atom()
  {
    switch (pick(0, 2)) {
      case 0: return Formula::atom(lin(), Rel::Eq);
      case 1: return Formula::atom(lin(), Rel::Ne);
      default: return Formula::atom(lin(), Rel::Le);
    }
  }

  Formula formula(int depth)
  {
    if (depth <= 0 || pick(0, 3) == 0) return atom();
    std::vector<Formula> kids;
    int n = static_cast<int>(pick(2, 3));
    for (int i = 0; i < n; ++i) kids.push_back(formula(depth - 1));
    return pick(0, 1) == 0 ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
  }

  std::vector<int64_t> point()
  {
    std::vector<int64_t> v(static_cast<size_t>(num_vars_));
    for (auto& x : v) x = pick(lo_, hi_);
    return v;
  }

 private:
  std::mt19937_64 rng_;
  int num_vars_;
  int64_t lo_, hi_;
};

}  // namespace testutil
