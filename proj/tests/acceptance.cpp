#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Release gate. Each case checks one end-to-end property of the tool and
// prints a single PASS/FAIL line, so `ctest -R acceptance` doubles as a
// human-readable scorecard:
//
//   1. the car-alarm fixture checked against itself is proved equivalent by
//      candidate search alone, quickly, with no reachability work
//   2. on a domain-reduced fixture the symbolic engine and the explicit
//      oracle agree on every mutant: verdict, unsafe state, trace length
//   3. verdicts are identical and batch time stays flat as the after-domain
//      scales 1x/10x/100x/1000x
//   4. the explicit oracle's candidate sweep grows with the domain while the
//      symbolic engine's solver-call count stays put
//   5. solver-backed successor enumeration matches the explicit interpreter
//      exhaustively, and negate/enumerate obey their contracts on random
//      instances
//   6. breadth-first reachability returns shortest traces at planted depths
//   7. over the full fixture batch, locating candidate actions costs less
//      time than the reachability phase
//   8. a deliberately hard constraint degrades to inconclusive under a tight
//      node budget, never to a wrong equivalence claim

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "asrefine/driver.hpp"
#include "asrefine/fixtures.hpp"
#include "asrefine/formula.hpp"
#include "asrefine/interpreter.hpp"
#include "asrefine/mutation.hpp"
#include "asrefine/reachability.hpp"
#include "asrefine/refinement.hpp"
#include "asrefine/semantics.hpp"
#include "testutil.hpp"

using namespace asrefine;
using testutil::must_parse;

namespace {

// Collects sub-checks for one criterion and prints the verdict line when the
// case scope closes (also on REQUIRE bail-out).
struct Criterion
{
  int id;
  const char* what;
  bool ok = true;

  Criterion(int id, const char* what) : id(id), what(what) {}
  ~Criterion()
  {
    std::printf("[criterion %d] %s: %s\n", id, what, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
  }

  void expect(bool cond, const std::string& msg)
  {
    if (!cond) ok = false;
    CHECK_MESSAGE(cond, msg);
  }
  void must(bool cond, const std::string& msg)
  {
    if (!cond) ok = false;
    REQUIRE_MESSAGE(cond, msg);
  }
};

double secs_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every state of the model's full domain box, odometer order.
std::vector<State> full_box(const StepVarSpace& space)
{
  std::vector<int64_t> lows, highs;
  for (int i = 0; i < space.n; ++i) {
    lows.push_back(space.domains[static_cast<size_t>(i)].lo);
    highs.push_back(space.domains[static_cast<size_t>(i)].hi);
  }
  std::vector<State> out;
  State s{lows};
  for (;;) {
    out.push_back(s);
    size_t k = s.values.size();
    while (k > 0 && s.values[k - 1] == highs[k - 1]) {
      --k;
      s.values[k] = lows[k];
    }
    if (k == 0) break;
    ++s.values[k - 1];
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 1: self-check is a fast equivalence proof with no reachability")
{
  Criterion c{1, "self-check proves equivalence without reachability"};

  Model m = make_cas(1);

  // The shipped model file is the generator's output, so checking the
  // generated fixture is checking the file.
  if (const char* src = std::getenv("ASREFINE_SRC_DIR")) {
    std::ifstream in(std::string(src) + "/models/cas_1.as");
    std::ostringstream text;
    text << in.rdbuf();
    c.expect(in.good() && text.str() == make_cas_text(1),
             "models/cas_1.as should match the fixture generator");
  }

  auto t0 = std::chrono::steady_clock::now();
  EngineOutcome sym = check_symbolic(m, m, {});
  double wall = secs_since(t0);

  c.expect(sym.verdict == ReportVerdict::EquivProved, "self-check must prove equivalence");
  c.expect(sym.reach_s == 0.0, "no reachability phase may run");
  c.expect(!sym.unsafe.has_value() && sym.trace.empty() && sym.mutated_action == -1,
           "no counterexample artifacts");
  c.expect(sym.note.empty(), "no skipped actions");
  c.expect(wall < 5.0, "runtime must stay under 5 s, was " + std::to_string(wall));
}

TEST_CASE("criterion 2: engines agree on every mutant of the reduced-domain fixture")
{
  Criterion c{2, "symbolic and explicit verdicts agree on the 0..30 fixture"};

  Model orig = make_cas(1, 30);
  BatchOptions bo;
  bo.engine = EngineSel::Both;
  bo.jobs = 1;
  BatchResult br = run_batch(orig, bo);

  c.must(br.rows.size() == 173, "one row per mutant plus the original");
  for (const MutantRow& row : br.rows) {
    c.must(row.symbolic.has_value() && row.explicit_outcome.has_value(),
           "both engines must report on row " + std::to_string(row.id));
    const EngineOutcome& sym = *row.symbolic;
    const EngineOutcome& exp = *row.explicit_outcome;
    std::string tag = "row " + std::to_string(row.id);
    c.expect(row.agree && outcomes_agree(sym, exp), tag + ": engines disagree");
    c.expect(sym.verdict != ReportVerdict::Inconclusive, tag + ": must be conclusive");
    if (sym.verdict == ReportVerdict::NonConforming) {
      c.expect(sym.unsafe == exp.unsafe, tag + ": unsafe states must be equal");
      c.expect(sym.trace.size() == exp.trace.size(), tag + ": trace lengths must be equal");
    }
  }
  c.expect(br.summary.disagreements == 0, "zero disagreements tolerated");
  c.expect(br.summary.nonconforming == 140, "frozen verdict split: nonconforming");
  c.expect(br.summary.equiv_proved == 9, "frozen verdict split: proved");
  c.expect(br.summary.equiv_bounded == 24, "frozen verdict split: bounded");
  c.expect(br.summary.inconclusive == 0, "frozen verdict split: inconclusive");
}

TEST_CASE("criterion 3: verdicts and batch time are flat across domain scales")
{
  Criterion c{3, "verdicts identical and time within 3x from cas_1 to cas_1000"};

  struct Snap
  {
    ReportVerdict verdict;
    std::optional<State> unsafe;
    size_t trace_len;

    bool operator==(const Snap&) const = default;
  };

  std::vector<double> walls;
  std::vector<std::vector<Snap>> snaps;
  for (int scale : {1, 10, 100, 1000}) {
    Model m = make_cas(scale);
    BatchOptions bo;
    bo.jobs = 1;
    BatchResult br = run_batch(m, bo);
    walls.push_back(br.wall_s);

    std::vector<Snap> snap;
    for (const MutantRow& row : br.rows) {
      c.must(row.symbolic.has_value(), "symbolic outcome present");
      snap.push_back({row.symbolic->verdict, row.symbolic->unsafe, row.symbolic->trace.size()});
    }
    snaps.push_back(std::move(snap));
  }

  c.must(snaps[0].size() == 173, "one row per mutant plus the original");
  for (size_t s = 1; s < snaps.size(); ++s) {
    c.must(snaps[s].size() == snaps[0].size(), "mutant counts must match across scales");
    for (size_t i = 0; i < snaps[0].size(); ++i)
      c.expect(snaps[s][i] == snaps[0][i],
               "row " + std::to_string(i) + " differs between scale 1 and scale index " +
                   std::to_string(s));
  }
  c.expect(walls[3] <= 3.0 * walls[0],
           "cas_1000 batch took " + std::to_string(walls[3]) + " s vs " +
               std::to_string(walls[0]) + " s for cas_1 (limit 3x)");
}

TEST_CASE("criterion 4: explicit sweep grows with the domain, symbolic calls do not")
{
  Criterion c{4, "10x domain: explicit candidates x5+, symbolic solve calls equal"};

  Model m1 = make_cas(1);
  Model m10 = make_cas(10);
  auto muts1 = enumerate_mutants(m1, {});
  auto muts10 = enumerate_mutants(m10, {});
  c.must(muts1.size() == 172 && muts10.size() == 172, "full mutant set at both scales");

  // A fixed subset spanning all three operators; identity is checked by site.
  for (size_t idx : std::array<size_t, 4>{0, 9, 100, 171}) {
    const Mutant& a = muts1[idx];
    const Mutant& b = muts10[idx];
    std::string tag = "mutant " + std::to_string(idx);
    c.expect(a.spec.op == b.spec.op && a.spec.action_label == b.spec.action_label &&
                 path_to_string(a.spec.location) == path_to_string(b.spec.location),
             tag + ": sites must line up across scales");

    EngineOutcome e1 = check_explicit(m1, a.model, {});
    EngineOutcome e10 = check_explicit(m10, b.model, {});
    c.expect(e10.explicit_stats.candidates >= 5 * e1.explicit_stats.candidates,
             tag + ": explicit candidates " + std::to_string(e1.explicit_stats.candidates) +
                 " -> " + std::to_string(e10.explicit_stats.candidates) + " (need 5x)");

    EngineOutcome s1 = check_symbolic(m1, a.model, {});
    EngineOutcome s10 = check_symbolic(m10, b.model, {});
    c.expect(s1.solver.solve_calls == s10.solver.solve_calls,
             tag + ": solve calls " + std::to_string(s1.solver.solve_calls) + " vs " +
                 std::to_string(s10.solver.solve_calls));
    c.expect(s1.verdict == s10.verdict, tag + ": symbolic verdicts must match");
  }
}

TEST_CASE("criterion 5: step semantics, negation, and enumeration match brute force")
{
  Criterion c{5, "exhaustive step agreement plus 1000 random negate/enumerate checks"};

  // Every state of several small models: solver-backed successor enumeration
  // must equal the explicit interpreter, step for step.
  int states_checked = 0;
  for (const std::string& text : {testutil::counter_text(), testutil::twovar_text(),
                                  testutil::branchy_text(), testutil::chain_text(5)}) {
    Model m = must_parse(text);
    StepVarSpace space = make_step_space(m);
    Formula system = translate_system(m, space);
    for (const State& s : full_box(space)) {
      SuccessorsResult sym = successors(space, system, s);
      c.must(sym.status == SolveStatus::Unsat, "successor enumeration must complete");
      c.expect(sym.steps == interpret_step(m, s),
               "steps diverge at state " + to_string(s));
      ++states_checked;
    }
  }
  c.expect(states_checked == 10 + 16 + 4 + 6, "every state of every model visited");

  // Random formulas over a 4x4x4 box: negation is an involution and a
  // pointwise complement; enumeration equals the brute-force oracle.
  testutil::RandomGen gen(20260816, 3, 0, 3);
  std::vector<std::vector<int64_t>> box;
  for (int64_t x = 0; x <= 3; ++x)
    for (int64_t y = 0; y <= 3; ++y)
      for (int64_t z = 0; z <= 3; ++z) box.push_back({x, y, z});

  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(2);
    if (!(negate(negate(f)) == f)) ++failures;
    for (const auto& pt : box)
      if (eval(negate(f), pt) == eval(f, pt)) ++failures;

    FDProblem p;
    p.domains = gen.domains();
    p.formula = &f;
    EnumerateResult er = enumerate(p, {0, 1, 2}, 1'000'000);
    if (!er.complete || er.tuples != testutil::project_sorted(testutil::all_solutions(p),
                                                              {0, 1, 2}))
      ++failures;
  }
  c.expect(failures == 0,
           std::to_string(failures) + " random-instance check(s) failed");
}

TEST_CASE("criterion 6: breadth-first search returns shortest traces at planted depths")
{
  Criterion c{6, "planted divergence at depth d yields exactly d steps"};

  Model orig = must_parse(testutil::chain_text(5));
  for (int d : {0, 1, 2, 3}) {
    Model mut = must_parse(testutil::chain_text(d));
    StepVarSpace space = make_step_space(orig, &mut);
    Formula system = translate_system(orig, space);
    std::string tag = "depth " + std::to_string(d);

    auto cand = find_mutated_action(orig, mut, space);
    c.must(cand.has_value(), tag + ": the changed action must be located");

    Verdict v = reach_non_refine(space, system, cand->formula, State{orig.init}, d, {});
    c.expect(v.kind == Verdict::Kind::NonConforming, tag + ": unsafe state must be reached");
    c.expect(v.trace.size() == static_cast<size_t>(d), tag + ": trace length must equal d");
    c.expect(v.unsafe == State{{d}}, tag + ": unsafe state must be [d]");

    // The trace must replay through the explicit interpreter to the unsafe
    // state.
    State cur{orig.init};
    bool replay = true;
    for (const Event& e : v.trace) {
      bool stepped = false;
      for (const auto& [event, post] : interpret_step(orig, cur)) {
        if (event == e) {
          cur = post;
          stepped = true;
          break;
        }
      }
      if (!stepped) replay = false;
    }
    c.expect(replay && cur == v.unsafe, tag + ": trace must replay to the unsafe state");

    if (d > 0) {
      Verdict shallow =
          reach_non_refine(space, system, cand->formula, State{orig.init}, d - 1, {});
      c.expect(shallow.kind == Verdict::Kind::Conforming,
               tag + ": bound d-1 must conform");
    }
  }
}

// Known to FAIL with the current engine, and kept as written: the expected
// ordering holds for checkers that re-post every constraint to a fresh solver
// store per call, making cost track call counts (reachability makes ~25x more
// calls here). This engine translates each formula once and reuses it, so a
// reachability probe is a near-free propagation over a mostly pinned store
// (microseconds) while each candidate-search solve still explores the full
// unpinned step box — the aggregate ordering inverts (~0.17 s vs ~0.01 s).
// Weakening the assertion to call counts, or charging translation time to the
// reachability phase, would make it pass without testing what it names.
TEST_CASE("criterion 7: candidate location is cheaper than reachability over the batch")
{
  Criterion c{7, "aggregate candidate-search time below aggregate reachability time"};

  Model m = make_cas(1);
  BatchOptions bo;
  bo.jobs = 1;
  BatchResult br = run_batch(m, bo);
  c.must(br.rows.size() == 173, "full batch");

  double find_total = 0.0, reach_total = 0.0;
  for (const MutantRow& row : br.rows) {
    c.must(row.symbolic.has_value(), "symbolic outcome present");
    find_total += row.symbolic->find_s;
    reach_total += row.symbolic->reach_s;
  }
  c.expect(find_total < reach_total,
           "candidate search " + std::to_string(find_total) + " s vs reachability " +
               std::to_string(reach_total) + " s");
}

TEST_CASE("criterion 8: a hard constraint degrades to inconclusive, never to a wrong equiv")
{
  Criterion c{8, "tight node budget yields inconclusive on the pigeonhole mutant"};

  Model orig = must_parse(testutil::stress_text());
  auto muts = enumerate_mutants(orig, MutationOps{false, true, false});
  c.must(!muts.empty() && muts[0].spec.original == "#=",
         "the inverted equality makes the guard a pigeonhole instance");
  const Model& mut = muts[0].model;

  CheckOptions tight;
  tight.solver_budget.max_nodes = 20;
  EngineOutcome starved = check_symbolic(orig, mut, tight);
  c.expect(starved.verdict == ReportVerdict::Inconclusive,
           std::string("starved verdict was ") + to_string(starved.verdict));
  c.expect(starved.note.find("skipped") != std::string::npos,
           "the skipped action must be named in the note");

  // With the default budget the refutation finishes and the explicit oracle
  // confirms as far as it can see.
  EngineOutcome proved = check_symbolic(orig, mut, {});
  c.expect(proved.verdict == ReportVerdict::EquivProved, "default budget must prove");
  EngineOutcome exp = check_explicit(orig, mut, {});
  c.expect(exp.verdict == ReportVerdict::EquivBounded, "oracle confirms to its bound");
  c.expect(outcomes_agree(proved, exp), "engines must agree");
}
