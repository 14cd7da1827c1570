#include "asrefine/driver.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace asrefine {

const char* to_string(ReportVerdict v)
{
  switch (v) {
    case ReportVerdict::NonConforming: return "nonconforming";
    case ReportVerdict::EquivProved: return "equiv_proved";
    case ReportVerdict::EquivBounded: return "equiv_bounded";
    case ReportVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

EngineOutcome check_symbolic(const Model& orig, const Model& mut, const CheckOptions& opts)
{
  EngineOutcome out;
  auto t_total = Clock::now();

  StepVarSpace space = make_step_space(orig, &mut);
  Formula system = translate_system(orig, space);
  State init{orig.init};

  MutatedActionFinder finder(orig, mut, space, opts.solver_budget);
  bool saw_bounded = false;
  bool saw_inconclusive = false;

  for (;;) {
    auto t_find = Clock::now();
    std::optional<NonRefinementConstraint> cand = finder.next(&out.solver);
    out.find_s += seconds_since(t_find);
    if (!cand) break;

    auto t_reach = Clock::now();
    Verdict v = reach_non_refine(space, system, cand->formula, init, opts.max_depth,
                                 opts.solver_budget, &out.solver);
    out.reach_s += seconds_since(t_reach);

    switch (v.kind) {
      case Verdict::Kind::NonConforming:
        out.verdict = ReportVerdict::NonConforming;
        out.unsafe = v.unsafe;
        out.trace = v.trace;
        out.witness = v.witness;
        out.mutated_action = cand->action_index;
        out.total_s = seconds_since(t_total);
        return out;
      case Verdict::Kind::Conforming:
        saw_bounded = true;
        break;
      case Verdict::Kind::Inconclusive:
        saw_inconclusive = true;
        if (!out.note.empty()) out.note += "; ";
        out.note += "'" + cand->label + "': " + v.reason;
        break;
    }
  }

  for (const auto& [idx, status] : finder.skipped()) {
    saw_inconclusive = true;
    if (!out.note.empty()) out.note += "; ";
    out.note +=
        "candidate search for '" + mut.actions[static_cast<size_t>(idx)].label + "' skipped: " +
        std::string(to_string(status));
  }

  if (saw_inconclusive)
    out.verdict = ReportVerdict::Inconclusive;
  else if (saw_bounded)
    out.verdict = ReportVerdict::EquivBounded;
  else
    out.verdict = ReportVerdict::EquivProved;
  out.total_s = seconds_since(t_total);
  return out;
}

EngineOutcome check_explicit(const Model& orig, const Model& mut, const CheckOptions& opts)
{
  EngineOutcome out;
  auto t_total = Clock::now();
  Verdict v = explicit_check(orig, mut, opts.max_depth, opts.explicit_limits, &out.explicit_stats);
  switch (v.kind) {
    case Verdict::Kind::NonConforming:
      out.verdict = ReportVerdict::NonConforming;
      out.unsafe = v.unsafe;
      out.trace = v.trace;
      out.witness = v.witness;
      break;
    case Verdict::Kind::Conforming:
      out.verdict = ReportVerdict::EquivBounded;
      break;
    case Verdict::Kind::Inconclusive:
      out.verdict = ReportVerdict::Inconclusive;
      out.note = v.reason;
      break;
  }
  out.total_s = out.reach_s = seconds_since(t_total);
  return out;
}

bool outcomes_agree(const EngineOutcome& sym, const EngineOutcome& exp)
{
  auto cls = [](ReportVerdict v) {
    switch (v) {
      case ReportVerdict::NonConforming: return 0;
      case ReportVerdict::EquivProved:
      case ReportVerdict::EquivBounded: return 1;
      case ReportVerdict::Inconclusive: return 2;
    }
    return 2;
  };
  if (cls(sym.verdict) != cls(exp.verdict)) return false;
  if (sym.verdict == ReportVerdict::NonConforming) {
    if (!sym.unsafe || !exp.unsafe) return false;
    if (!(*sym.unsafe == *exp.unsafe)) return false;
    if (sym.trace.size() != exp.trace.size()) return false;
  }
  return true;
}

BatchResult run_batch(const Model& orig, const BatchOptions& opts)
{
  auto t0 = Clock::now();
  std::vector<Mutant> mutants = enumerate_mutants(orig, opts.ops);

  BatchResult res;
  size_t base = opts.include_original ? 1 : 0;
  res.rows.resize(base + mutants.size());
  if (opts.include_original) res.rows[0].id = 0;
  for (size_t i = 0; i < mutants.size(); ++i) {
    // Mutant ids are 1-based to match the mut_%03d.as manifest numbering,
    // whether or not row 0 (the unmutated original) is included.
    res.rows[base + i].id = static_cast<int>(i) + 1;
    res.rows[base + i].spec = mutants[i].spec;
  }

  auto work_row = [&](size_t row_idx) {
    MutantRow& row = res.rows[row_idx];
    const Model& mut = row.spec ? mutants[row_idx - base].model : orig;
    if (opts.engine != EngineSel::Explicit) row.symbolic = check_symbolic(orig, mut, opts.check);
    if (opts.engine != EngineSel::Symbolic)
      row.explicit_outcome = check_explicit(orig, mut, opts.check);
    if (row.symbolic && row.explicit_outcome)
      row.agree = outcomes_agree(*row.symbolic, *row.explicit_outcome);
  };

  unsigned jobs = opts.jobs > 0 ? static_cast<unsigned>(opts.jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
  if (jobs <= 1 || res.rows.size() <= 1) {
    for (size_t i = 0; i < res.rows.size(); ++i) work_row(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= res.rows.size()) return;
        work_row(i);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& row : res.rows) {
    const EngineOutcome* primary =
        row.symbolic ? &*row.symbolic : row.explicit_outcome ? &*row.explicit_outcome : nullptr;
    if (!primary) continue;
    switch (primary->verdict) {
      case ReportVerdict::NonConforming: ++res.summary.nonconforming; break;
      case ReportVerdict::EquivProved: ++res.summary.equiv_proved; break;
      case ReportVerdict::EquivBounded: ++res.summary.equiv_bounded; break;
      case ReportVerdict::Inconclusive: ++res.summary.inconclusive; break;
    }
    if (row.symbolic && row.explicit_outcome && !row.agree) ++res.summary.disagreements;
  }
  res.wall_s = seconds_since(t0);
  return res;
}

}  // namespace asrefine
