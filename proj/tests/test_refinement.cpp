#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "asrefine/fixtures.hpp"
#include "asrefine/interpreter.hpp"
#include "asrefine/mutation.hpp"
#include "asrefine/refinement.hpp"
#include "testutil.hpp"

using namespace asrefine;
using testutil::must_parse;

namespace {

struct DecodedStep
{
  State pre, post;
  Event ev;
};

DecodedStep decode(const StepVarSpace& space, const std::vector<int64_t>& v)
{
  DecodedStep d;
  for (int i = 0; i < space.n; ++i) {
    d.pre.values.push_back(v[static_cast<size_t>(space.pre(i))]);
    d.post.values.push_back(v[static_cast<size_t>(space.post(i))]);
  }
  auto code = static_cast<size_t>(v[static_cast<size_t>(space.label_var())]);
  d.ev.label = space.labels[code];
  for (int k = 0; k < space.arities[code]; ++k)
    d.ev.args.push_back(v[static_cast<size_t>(space.arg_var(k))]);
  return d;
}

DecodedStep solve_and_decode(const StepVarSpace& space, const NonRefinementConstraint& c)
{
  FDProblem p;
  p.domains = space.domains;
  p.formula = &c.formula;
  SolveResult r = solve(p);
  REQUIRE(r.status == SolveStatus::Sat);
  return decode(space, r.values);
}

bool has_step(const std::vector<std::pair<Event, State>>& steps, const Event& ev,
              const State& post)
{
  return std::find(steps.begin(), steps.end(), std::make_pair(ev, post)) != steps.end();
}

// Two actions: 'hard' whose mutated guard is a pigeonhole contradiction the
// solver must actually search to refute, and 'leak' with an easy divergence.
std::string hard_leak_text(bool mutated)
{
  std::string guard = mutated ? "p0 #\\= p1" : "p0 #= p1";
  const char* names[] = {"p0", "p1", "p2", "p3", "p4", "p5"};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      if (i == 0 && j == 1) continue;
      guard += std::string(" /\\ ") + names[i] + " #\\= " + names[j];
    }
  std::string leak_guard = mutated ? "true" : "ok #= 1";
  return "type(hole, X) :- X in 0..4.\ntype(b, X) :- X in 0..1.\n"
         "var([p0, p1, p2, p3, p4, p5], hole).\nvar([ok], b).\n"
         "state_def([p0, p1, p2, p3, p4, p5, ok]).\ninit([0, 0, 0, 0, 0, 0, 0]).\n"
         "as :- actions (\n  'hard'::(" +
         guard + ") => (ok := 1),\n  'leak'::(" + leak_guard +
         ") => (ok := 0)\n), dood ( 'hard' [] 'leak' ).\n";
}

}  // namespace

TEST_CASE("a system refines itself")
{
  Model m = make_cas(1);
  StepVarSpace space = make_step_space(m);
  MutatedActionFinder finder(m, m, space);
  SolverStats st;
  CHECK(!finder.next(&st).has_value());
  CHECK(finder.skipped().empty());
  CHECK(st.solve_calls == 0);  // every action is structurally unchanged: no solves

  Model c = must_parse(testutil::counter_text());
  StepVarSpace cs = make_step_space(c);
  CHECK(!find_mutated_action(c, c, cs).has_value());
}

TEST_CASE("an always-enabled Lock is caught with a checkable witness")
{
  Model orig = make_cas(1);
  auto mutants = enumerate_mutants(orig, MutationOps{true, false, false});
  auto it = std::find_if(mutants.begin(), mutants.end(),
                         [](const Mutant& m) { return m.spec.action_label == "Lock"; });
  REQUIRE(it != mutants.end());
  const Model& mut = it->model;

  StepVarSpace space = make_step_space(orig, &mut);
  auto c = find_mutated_action(orig, mut, space);
  REQUIRE(c.has_value());
  CHECK(c->label == "Lock");
  CHECK(c->action_index == orig.action_index("Lock"));

  // The satisfying step is one the mutant can take and the original cannot.
  DecodedStep d = solve_and_decode(space, *c);
  CHECK(d.ev.label == "Lock");
  CHECK(has_step(interpret_step(mut, d.pre), d.ev, d.post));
  CHECK(!has_step(interpret_step(orig, d.pre), d.ev, d.post));
}

TEST_CASE("a label the original lacks needs no negations")
{
  Model orig = must_parse(testutil::counter_text());
  Model mut = must_parse(
      "type(small, X) :- X in 0..9.\nvar([x], small).\nstate_def([x]).\ninit([0]).\n"
      "as :- actions ( 'tick'::(x #< 9) => (x := x + 1),\n"
      "                'boom'::(x #= 0) => (x := 9) ),\n"
      "      dood ( 'tick' [] 'boom' ).\n");
  StepVarSpace space = make_step_space(orig, &mut);
  CHECK(space.labels == std::vector<std::string>{"tick", "boom"});

  auto c = find_mutated_action(orig, mut, space);
  REQUIRE(c.has_value());
  CHECK(c->label == "boom");
  DecodedStep d = solve_and_decode(space, *c);
  CHECK(d.pre == State{{0}});
  CHECK(d.post == State{{9}});
  CHECK(d.ev == Event{"boom", {}});
}

TEST_CASE("restricting a guard refines")
{
  Model orig = must_parse(testutil::counter_text());
  Model mut = must_parse(
      "type(small, X) :- X in 0..9.\nvar([x], small).\nstate_def([x]).\ninit([0]).\n"
      "as :- actions ( 'tick'::(x #< 5) => (x := x + 1) ), dood ( 'tick' ).\n");
  StepVarSpace space = make_step_space(orig, &mut);
  MutatedActionFinder finder(orig, mut, space);
  CHECK(!finder.next().has_value());
  CHECK(finder.skipped().empty());
}

TEST_CASE("actions outside the do-od block are never candidates")
{
  auto text = [](int ghost_target) {
    return "type(small, X) :- X in 0..9.\nvar([x], small).\nstate_def([x]).\ninit([0]).\n"
           "as :- actions ( 'tick'::(x #< 9) => (x := x + 1),\n"
           "                'ghost'::(true) => (x := " +
           std::to_string(ghost_target) + ") ),\n      dood ( 'tick' ).\n";
  };
  Model orig = must_parse(text(0));
  Model mut = must_parse(text(9));
  StepVarSpace space = make_step_space(orig, &mut);
  SolverStats st;
  CHECK(!find_mutated_action(orig, mut, space, {}, &st).has_value());
  // 'tick' is unchanged (dismissed without a solve); had 'ghost' been
  // examined, its unmatched label would have produced a candidate.
  CHECK(st.solve_calls == 0);
}

TEST_CASE("a semantically redundant increment proves equivalent")
{
  Model orig = must_parse(testutil::redundant_text());
  auto mutants = enumerate_mutants(orig, MutationOps{false, false, true});
  auto it = std::find_if(mutants.begin(), mutants.end(),
                         [](const Mutant& m) { return m.spec.original == "5"; });
  REQUIRE(it != mutants.end());
  CHECK(it->spec.replacement_value == 6);  // x #= 3 /\ x #< 6 still means x = 3

  StepVarSpace space = make_step_space(orig, &it->model);
  MutatedActionFinder finder(orig, it->model, space);
  CHECK(!finder.next().has_value());
  CHECK(finder.skipped().empty());
}

TEST_CASE("the finder resumes across candidates in definition order")
{
  Model orig = must_parse(testutil::twovar_text());
  Model mut = must_parse(
      "type(quad, X) :- X in 0..3.\nvar([x, y], quad).\nstate_def([x, y]).\ninit([0, 0]).\n"
      "as :- actions ( 'set'(V)::(true) => (x := V),\n"
      "                'copy'::(true) => (x := y; y := x),\n"
      "                'noop'::(true) => (x := y) ),\n"
      "      dood ( [V:quad]:'set'(V) [] 'copy' [] 'noop' ).\n");
  StepVarSpace space = make_step_space(orig, &mut);
  MutatedActionFinder finder(orig, mut, space);

  auto first = finder.next();
  REQUIRE(first.has_value());
  CHECK(first->label == "copy");
  // The unguarded copy only adds behaviour where the original guard x #\= y
  // blocked it, so every witness starts from x = y.
  DecodedStep d1 = solve_and_decode(space, *first);
  CHECK(d1.pre.values[0] == d1.pre.values[1]);
  CHECK(d1.post == d1.pre);

  auto second = finder.next();
  REQUIRE(second.has_value());
  CHECK(second->label == "noop");
  DecodedStep d2 = solve_and_decode(space, *second);
  CHECK(d2.pre.values[0] != d2.pre.values[1]);

  CHECK(!finder.next().has_value());
  CHECK(finder.skipped().empty());
}

TEST_CASE("a skipped action does not end the search")
{
  Model orig = must_parse(hard_leak_text(false));
  Model mut = must_parse(hard_leak_text(true));
  StepVarSpace space = make_step_space(orig, &mut);

  // Within the default budget the pigeonhole guard is refuted outright and
  // the easy divergence on 'leak' is the only candidate.
  MutatedActionFinder relaxed(orig, mut, space);
  auto c = relaxed.next();
  REQUIRE(c.has_value());
  CHECK(c->label == "leak");
  CHECK(relaxed.skipped().empty());

  // Starved of nodes, 'hard' is recorded as skipped and iteration goes on.
  Budget tiny;
  tiny.max_nodes = 20;
  MutatedActionFinder starved(orig, mut, space, tiny);
  auto c2 = starved.next();
  REQUIRE(c2.has_value());
  CHECK(c2->label == "leak");
  REQUIRE(starved.skipped().size() == 1);
  CHECK(starved.skipped()[0].first == 0);
  CHECK(starved.skipped()[0].second == SolveStatus::NodeLimit);
}

TEST_CASE("an inverted comparison inside a conjunction can defeat a small budget")
{
  Model orig = must_parse(testutil::stress_text());
  auto mutants = enumerate_mutants(orig, MutationOps{false, true, false});
  REQUIRE(!mutants.empty());
  REQUIRE(mutants[0].spec.original == "#=");
  const Model& mut = mutants[0].model;
  StepVarSpace space = make_step_space(orig, &mut);

  // Unbounded: six pairwise-distinct values cannot fit in 0..4, so the
  // mutated guard is unsatisfiable and equivalence is proved outright.
  MutatedActionFinder proof(orig, mut, space);
  CHECK(!proof.next().has_value());
  CHECK(proof.skipped().empty());

  Budget tiny;
  tiny.max_nodes = 20;
  MutatedActionFinder starved(orig, mut, space, tiny);
  CHECK(!starved.next().has_value());
  REQUIRE(starved.skipped().size() == 1);
  CHECK(starved.skipped()[0].second == SolveStatus::NodeLimit);

  Budget eager;
  eager.timeout_s = 0.0;
  MutatedActionFinder timed(orig, mut, space, eager);
  CHECK(!timed.next().has_value());
  REQUIRE(timed.skipped().size() == 1);
  CHECK(timed.skipped()[0].second == SolveStatus::Timeout);
}
