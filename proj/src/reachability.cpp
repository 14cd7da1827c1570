#include "asrefine/reachability.hpp"

#include <deque>
#include <limits>
#include <unordered_set>

namespace asrefine {

namespace {

std::vector<Domain> pin_pre(const StepVarSpace& space, const State& s)
{
  std::vector<Domain> dom = space.domains;
  for (int i = 0; i < space.n; ++i) {
    int64_t v = s.values[static_cast<size_t>(i)];
    dom[static_cast<size_t>(space.pre(i))] = {v, v};
  }
  return dom;
}

// (event, post) from one full solver valuation.
std::pair<Event, State> decode_step(const StepVarSpace& space, const std::vector<int64_t>& values)
{
  int code = static_cast<int>(values[static_cast<size_t>(space.label_var())]);
  Event ev;
  ev.label = space.labels[static_cast<size_t>(code)];
  int arity = space.arities[static_cast<size_t>(code)];
  for (int k = 0; k < arity; ++k)
    ev.args.push_back(values[static_cast<size_t>(space.arg_var(k))]);
  State post;
  post.values.reserve(static_cast<size_t>(space.n));
  for (int i = 0; i < space.n; ++i)
    post.values.push_back(values[static_cast<size_t>(space.post(i))]);
  return {std::move(ev), std::move(post)};
}

}  // namespace

SuccessorsResult successors(const StepVarSpace& space, const Formula& system, const State& s,
                            const Budget& budget, SolverStats* stats)
{
  FDProblem p;
  p.domains = pin_pre(space, s);
  p.formula = &system;

  std::vector<VarId> projection;
  projection.push_back(space.label_var());
  for (int k = 0; k < space.arg_width; ++k) projection.push_back(space.arg_var(k));
  for (int i = 0; i < space.n; ++i) projection.push_back(space.post(i));

  EnumerateResult e =
      enumerate(p, projection, std::numeric_limits<uint64_t>::max(), budget, stats);

  SuccessorsResult out;
  out.status = e.status;
  out.steps.reserve(e.tuples.size());
  for (const auto& t : e.tuples) {
    // Rebuild a full valuation vector in space layout for uniform decoding.
    std::vector<int64_t> values(static_cast<size_t>(space.num_vars()), 0);
    for (int i = 0; i < space.n; ++i)
      values[static_cast<size_t>(space.pre(i))] = s.values[static_cast<size_t>(i)];
    for (size_t j = 0; j < projection.size(); ++j)
      values[static_cast<size_t>(projection[j])] = t[j];
    out.steps.push_back(decode_step(space, values));
  }
  return out;
}

UnsafeResult check_unsafe(const StepVarSpace& space, const Formula& constraint, const State& s,
                          const Budget& budget, SolverStats* stats)
{
  FDProblem p;
  p.domains = pin_pre(space, s);
  p.formula = &constraint;
  SolveResult r = solve(p, budget, stats);
  UnsafeResult out;
  out.status = r.status;
  if (r.status == SolveStatus::Sat) {
    auto [ev, post] = decode_step(space, r.values);
    out.witness = Witness{std::move(ev), std::move(post)};
  }
  return out;
}

Verdict reach_non_refine(const StepVarSpace& space, const Formula& system,
                         const Formula& constraint, const State& init, int max_depth,
                         const Budget& budget, SolverStats* stats, ReachProbe* probe)
{
  Verdict v;
  auto inconclusive = [&](SolveStatus st, const char* where) {
    v.kind = Verdict::Kind::Inconclusive;
    v.reason = std::string(where) + ": solver " + to_string(st);
    return v;
  };

  UnsafeResult u0 = check_unsafe(space, constraint, init, budget, stats);
  if (u0.status == SolveStatus::NodeLimit || u0.status == SolveStatus::Timeout)
    return inconclusive(u0.status, "unsafe check at init");
  if (u0.status == SolveStatus::Sat) {
    v.kind = Verdict::Kind::NonConforming;
    v.unsafe = init;
    v.witness = *u0.witness;
    return v;
  }

  struct Node
  {
    State state;
    std::vector<Event> trace;
  };
  std::deque<Node> frontier;
  std::unordered_set<State, StateHash> visited;
  visited.insert(init);
  frontier.push_back({init, {}});

  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (static_cast<int>(node.trace.size()) >= max_depth) continue;
    if (probe) probe->expanded.emplace_back(node.state, static_cast<int>(node.trace.size()));
    SuccessorsResult succ = successors(space, system, node.state, budget, stats);
    if (succ.status != SolveStatus::Unsat)
      return inconclusive(succ.status, "successor enumeration");
    for (auto& [ev, post] : succ.steps) {
      if (visited.count(post)) continue;
      visited.insert(post);
      std::vector<Event> trace = node.trace;
      trace.push_back(ev);
      UnsafeResult u = check_unsafe(space, constraint, post, budget, stats);
      if (u.status == SolveStatus::NodeLimit || u.status == SolveStatus::Timeout)
        return inconclusive(u.status, "unsafe check");
      if (u.status == SolveStatus::Sat) {
        v.kind = Verdict::Kind::NonConforming;
        v.unsafe = post;
        v.trace = std::move(trace);
        v.witness = *u.witness;
        return v;
      }
      frontier.push_back({std::move(post), std::move(trace)});
    }
  }
  v.kind = Verdict::Kind::Conforming;
  v.depth = max_depth;
  return v;
}

}  // namespace asrefine
