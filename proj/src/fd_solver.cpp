#include "asrefine/fd_solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <set>

namespace asrefine {

const char* to_string(SolveStatus s)
{
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::NodeLimit: return "node_limit";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

int64_t floor_div(int64_t a, int64_t b)
{
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t ceil_div(int64_t a, int64_t b)
{
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

struct LimitHit
{
  SolveStatus which;
};

enum class Status { Entailed, Refuted, Unknown };

// Interval bounds of a linear expression over box domains.
void lin_bounds(const LinExpr& e, const std::vector<Domain>& dom, int64_t& lo, int64_t& hi)
{
  lo = hi = e.constant;
  for (auto [v, c] : e.terms) {
    const Domain& d = dom[static_cast<size_t>(v)];
    if (c > 0) {
      lo += c * d.lo;
      hi += c * d.hi;
    } else {
      lo += c * d.hi;
      hi += c * d.lo;
    }
  }
}

Status atom_status(const Formula& f, const std::vector<Domain>& dom)
{
  int64_t lo, hi;
  lin_bounds(f.expr, dom, lo, hi);
  switch (f.rel) {
    case Rel::Eq:
      if (lo == 0 && hi == 0) return Status::Entailed;
      if (lo > 0 || hi < 0) return Status::Refuted;
      return Status::Unknown;
    case Rel::Ne:
      if (lo > 0 || hi < 0) return Status::Entailed;
      if (lo == 0 && hi == 0) return Status::Refuted;
      return Status::Unknown;
    case Rel::Le:
      if (hi <= 0) return Status::Entailed;
      if (lo > 0) return Status::Refuted;
      return Status::Unknown;
  }
  return Status::Unknown;
}

Status formula_status(const Formula& f, const std::vector<Domain>& dom)
{
  switch (f.kind) {
    case Formula::Kind::True:
      return Status::Entailed;
    case Formula::Kind::False:
      return Status::Refuted;
    case Formula::Kind::Atom:
      return atom_status(f, dom);
    case Formula::Kind::And: {
      bool all_entailed = true;
      for (const auto& c : f.children) {
        Status s = formula_status(c, dom);
        if (s == Status::Refuted) return Status::Refuted;
        if (s != Status::Entailed) all_entailed = false;
      }
      return all_entailed ? Status::Entailed : Status::Unknown;
    }
    case Formula::Kind::Or: {
      bool all_refuted = true;
      for (const auto& c : f.children) {
        Status s = formula_status(c, dom);
        if (s == Status::Entailed) return Status::Entailed;
        if (s != Status::Refuted) all_refuted = false;
      }
      return all_refuted ? Status::Refuted : Status::Unknown;
    }
  }
  return Status::Unknown;
}

// Bounds-consistency narrowing for `e <= 0`. Returns false on a wipeout.
bool prune_le(const LinExpr& e, std::vector<Domain>& dom, bool& changed)
{
  int64_t lo, hi;
  lin_bounds(e, dom, lo, hi);
  if (lo > 0) return false;
  if (hi <= 0) return true;
  for (auto [v, c] : e.terms) {
    Domain& d = dom[static_cast<size_t>(v)];
    // Residual minimum of e without v's contribution.
    int64_t rm = lo - (c > 0 ? c * d.lo : c * d.hi);
    if (c > 0) {
      int64_t ub = floor_div(-rm, c);
      if (ub < d.hi) {
        d.hi = ub;
        changed = true;
        if (d.empty()) return false;
      }
    } else {
      int64_t lb = ceil_div(-rm, c);  // c < 0 flips the inequality
      if (lb > d.lo) {
        d.lo = lb;
        changed = true;
        if (d.empty()) return false;
      }
    }
  }
  return true;
}

bool prune_atom(const Formula& f, std::vector<Domain>& dom, bool& changed)
{
  switch (f.rel) {
    case Rel::Le:
      return prune_le(f.expr, dom, changed);
    case Rel::Eq: {
      if (!prune_le(f.expr, dom, changed)) return false;
      LinExpr neg = lin_neg(f.expr);
      return prune_le(neg, dom, changed);
    }
    case Rel::Ne: {
      // Endpoint pruning once a single variable remains unbound.
      int64_t rest = f.expr.constant;
      int unbound = -1;
      int64_t coeff = 0;
      for (auto [v, c] : f.expr.terms) {
        const Domain& d = dom[static_cast<size_t>(v)];
        if (d.lo == d.hi) {
          rest += c * d.lo;
        } else if (unbound >= 0) {
          return true;  // two unbound vars: nothing to prune
        } else {
          unbound = v;
          coeff = c;
        }
      }
      if (unbound < 0) return rest != 0;
      if (rest % coeff != 0) return true;  // forbidden point is fractional
      int64_t bad = -rest / coeff;
      Domain& d = dom[static_cast<size_t>(unbound)];
      if (bad == d.lo && bad == d.hi) return false;
      if (bad == d.lo) {
        ++d.lo;
        changed = true;
      } else if (bad == d.hi) {
        --d.hi;
        changed = true;
      }
      return true;
    }
  }
  return true;
}

// Active constraint set: conjuncts awaiting entailment. Ands are spliced in
// place, entailed members removed, Or nodes reduced when all but one child is
// refuted. Order is preserved so the search stays deterministic.
bool propagate(std::vector<const Formula*>& actives, std::vector<Domain>& dom)
{
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < actives.size();) {
      const Formula& f = *actives[i];
      switch (f.kind) {
        case Formula::Kind::True:
          actives.erase(actives.begin() + static_cast<ptrdiff_t>(i));
          changed = true;
          continue;
        case Formula::Kind::False:
          return false;
        case Formula::Kind::And: {
          std::vector<const Formula*> kids;
          kids.reserve(f.children.size());
          for (const auto& c : f.children) kids.push_back(&c);
          actives.erase(actives.begin() + static_cast<ptrdiff_t>(i));
          actives.insert(actives.begin() + static_cast<ptrdiff_t>(i), kids.begin(), kids.end());
          changed = true;
          continue;
        }
        case Formula::Kind::Atom: {
          Status s = atom_status(f, dom);
          if (s == Status::Refuted) return false;
          if (s == Status::Entailed) {
            actives.erase(actives.begin() + static_cast<ptrdiff_t>(i));
            changed = true;
            continue;
          }
          if (!prune_atom(f, dom, changed)) return false;
          ++i;
          continue;
        }
        case Formula::Kind::Or: {
          const Formula* last_open = nullptr;
          int open = 0;
          bool entailed = false;
          for (const auto& c : f.children) {
            Status s = formula_status(c, dom);
            if (s == Status::Entailed) {
              entailed = true;
              break;
            }
            if (s == Status::Unknown) {
              ++open;
              last_open = &c;
            }
          }
          if (entailed) {
            actives.erase(actives.begin() + static_cast<ptrdiff_t>(i));
            changed = true;
            continue;
          }
          if (open == 0) return false;
          if (open == 1) {
            actives[i] = last_open;
            changed = true;
            continue;
          }
          ++i;
          continue;
        }
      }
    }
  }
  return true;
}

// Exhaustive DFS over boxes. At every node the active constraints are
// propagated; a box with no active constraints left is a solid block of
// solutions, walked point by point through the visitor. The visitor returns
// true to stop the search (first-solution queries, solution caps).
//
// Enumeration deliberately never re-solves under blocking clauses: a clause
// per found solution turns the constraint store quadratic and, worse, offers
// the Or-splitting rule an exponential number of useless case splits.
template <typename Visitor>
class Search
{
 public:
  Search(const Budget& budget, SolverStats& stats, Visitor visit)
      : budget_(budget), stats_(stats), visit_(visit),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(budget.timeout_s)))
  {
  }

  // True when the visitor stopped the search; false when the space is
  // exhausted. Resource limits surface as LimitHit.
  bool run(std::vector<const Formula*> actives, std::vector<Domain> dom)
  {
    return dfs(std::move(actives), std::move(dom));
  }

 private:
  static constexpr int64_t kLabelSpan = 16;  // value-iterate at or below, bisect above

  void charge_node()
  {
    ++stats_.nodes;
    if (stats_.nodes > budget_.max_nodes) throw LimitHit{SolveStatus::NodeLimit};
    if ((stats_.nodes & 0xff) == 0 && Clock::now() > deadline_)
      throw LimitHit{SolveStatus::Timeout};
  }

  bool dfs(std::vector<const Formula*> actives, std::vector<Domain> dom)
  {
    charge_node();
    if (!propagate(actives, dom)) {
      ++stats_.backtracks;
      return false;
    }
    if (actives.empty()) return emit_box(dom);

    // Split the first unresolved disjunction, children in syntactic order.
    for (size_t i = 0; i < actives.size(); ++i) {
      if (actives[i]->kind != Formula::Kind::Or) continue;
      const Formula& orf = *actives[i];
      for (const auto& child : orf.children) {
        std::vector<const Formula*> branch = actives;
        branch[i] = &child;
        if (dfs(std::move(branch), dom)) return true;
      }
      return false;
    }

    // Only unknown atoms remain: label the lowest-indexed unbound variable.
    size_t var = dom.size();
    for (size_t i = 0; i < dom.size(); ++i) {
      if (dom[i].lo < dom[i].hi) {
        var = i;
        break;
      }
    }
    assert(var < dom.size() && "unknown atoms over fully bound domains");
    const Domain d = dom[var];
    if (d.hi - d.lo + 1 <= kLabelSpan) {
      for (int64_t v = d.lo; v <= d.hi; ++v) {
        std::vector<Domain> dd = dom;
        dd[var] = {v, v};
        if (dfs(actives, std::move(dd))) return true;
      }
    } else {
      int64_t mid = d.lo + (d.hi - d.lo) / 2;
      std::vector<Domain> left = dom;
      left[var] = {d.lo, mid};
      if (dfs(actives, std::move(left))) return true;
      std::vector<Domain> right = std::move(dom);
      right[var] = {mid + 1, d.hi};
      if (dfs(std::move(actives), std::move(right))) return true;
    }
    return false;
  }

  // Every point of `dom` satisfies the formula; visit them in ascending
  // lexicographic order, charging a node per point.
  bool emit_box(const std::vector<Domain>& dom)
  {
    std::vector<int64_t> v(dom.size());
    for (size_t i = 0; i < dom.size(); ++i) v[i] = dom[i].lo;
    for (;;) {
      charge_node();
      if (visit_(v)) return true;
      size_t i = dom.size();
      while (i > 0 && v[i - 1] == dom[i - 1].hi) {
        v[i - 1] = dom[i - 1].lo;
        --i;
      }
      if (i == 0) return false;
      ++v[i - 1];
    }
  }

  const Budget& budget_;
  SolverStats& stats_;
  Visitor visit_;
  Clock::time_point deadline_;
};

SolveResult solve_seed(const std::vector<Domain>& domains, std::vector<const Formula*> seed,
                       const Budget& budget, SolverStats* stats)
{
  SolverStats local;
  SolverStats& st = stats ? *stats : local;
  ++st.solve_calls;
  auto t0 = Clock::now();
  SolveResult res;
  for (const auto& d : domains) {
    if (d.empty()) {
      res.status = SolveStatus::Unsat;
      st.time_s += std::chrono::duration<double>(Clock::now() - t0).count();
      return res;
    }
  }
  // Per-call node accounting against the budget.
  SolverStats call_stats;
  try {
    std::vector<int64_t> out;
    auto take_first = [&out](const std::vector<int64_t>& v) {
      out = v;
      return true;
    };
    Search<decltype(take_first)> search(budget, call_stats, take_first);
    bool sat = search.run(std::move(seed), domains);
    res.status = sat ? SolveStatus::Sat : SolveStatus::Unsat;
    if (sat) res.values = std::move(out);
  } catch (const LimitHit& hit) {
    res.status = hit.which;
  }
  st.nodes += call_stats.nodes;
  st.backtracks += call_stats.backtracks;
  st.time_s += std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

std::vector<const Formula*> problem_seed(const FDProblem& p)
{
  std::vector<const Formula*> seed;
  if (p.formula) seed.push_back(p.formula);
  for (const auto& f : p.extra) seed.push_back(&f);
  return seed;
}

}  // namespace

SolveResult solve(const FDProblem& p, const Budget& budget, SolverStats* stats)
{
  return solve_seed(p.domains, problem_seed(p), budget, stats);
}

EnumerateResult enumerate(const FDProblem& p, const std::vector<VarId>& projection,
                          uint64_t max_solutions, const Budget& budget, SolverStats* stats)
{
  SolverStats local;
  SolverStats& st = stats ? *stats : local;
  ++st.solve_calls;
  auto t0 = Clock::now();

  EnumerateResult out;
  for (const auto& d : p.domains) {
    if (d.empty()) {
      out.status = SolveStatus::Unsat;
      out.complete = true;
      st.time_s += std::chrono::duration<double>(Clock::now() - t0).count();
      return out;
    }
  }

  // One exhaustive pass, deduplicating projected tuples on the fly.
  std::set<std::vector<int64_t>> seen;
  std::vector<int64_t> tuple(projection.size());
  auto collect = [&](const std::vector<int64_t>& v) {
    for (size_t i = 0; i < projection.size(); ++i)
      tuple[i] = v[static_cast<size_t>(projection[i])];
    seen.insert(tuple);
    return seen.size() >= max_solutions;
  };

  SolverStats call_stats;
  try {
    Search<decltype(collect)> search(budget, call_stats, collect);
    bool stopped = search.run(problem_seed(p), p.domains);
    // Unsat doubles as "enumeration ran to completion"; Sat means the
    // solution cap cut it short.
    out.status = stopped ? SolveStatus::Sat : SolveStatus::Unsat;
    out.complete = !stopped;
  } catch (const LimitHit& hit) {
    out.status = hit.which;
    out.complete = false;
  }
  st.nodes += call_stats.nodes;
  st.backtracks += call_stats.backtracks;
  st.time_s += std::chrono::duration<double>(Clock::now() - t0).count();

  out.tuples.assign(seen.begin(), seen.end());
  return out;
}

std::optional<std::vector<Domain>> propagate_root(const FDProblem& p)
{
  for (const auto& d : p.domains)
    if (d.empty()) return std::nullopt;
  std::vector<const Formula*> actives = problem_seed(p);
  std::vector<Domain> dom = p.domains;
  if (!propagate(actives, dom)) return std::nullopt;
  return dom;
}

}  // namespace asrefine
