#include "asrefine/interpreter.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace asrefine {

std::string to_string(const Event& e)
{
  std::ostringstream os;
  os << '\'' << e.label << '\'';
  if (!e.args.empty()) {
    os << '(';
    for (size_t i = 0; i < e.args.size(); ++i) {
      if (i) os << ", ";
      os << e.args[i];
    }
    os << ')';
  }
  return os.str();
}

std::string to_string(const State& s)
{
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < s.values.size(); ++i) {
    if (i) os << ", ";
    os << s.values[i];
  }
  os << ']';
  return os.str();
}

std::string to_string(const Verdict& v)
{
  std::ostringstream os;
  switch (v.kind) {
    case Verdict::Kind::NonConforming:
      os << "non-conforming: unsafe state " << to_string(v.unsafe) << " after " << v.trace.size()
         << " step(s), diverging step " << to_string(v.witness.event) << " -> "
         << to_string(v.witness.post);
      break;
    case Verdict::Kind::Conforming:
      os << "conforming up to depth " << v.depth;
      break;
    case Verdict::Kind::Inconclusive:
      os << "inconclusive: " << v.reason;
      break;
  }
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

// Ground evaluation environment: the state vector plus parameter values.
struct GroundEnv
{
  const Model* m;
  const State* s;
  const std::vector<std::string>* param_names;
  const std::vector<int64_t>* param_values;

  int64_t lookup(const std::string& name) const
  {
    int vi = m->var_index(name);
    if (vi >= 0) return s->values[static_cast<size_t>(vi)];
    for (size_t i = 0; i < param_names->size(); ++i)
      if ((*param_names)[i] == name) return (*param_values)[i];
    // Validation guarantees resolution; reaching here is a programming error.
    throw std::logic_error("interpreter: unresolved name '" + name + "'");
  }
};

int64_t eval_expr(const Expr& e, const GroundEnv& env, const State& current)
{
  switch (e.kind) {
    case Expr::Kind::Var: {
      int vi = env.m->var_index(e.var);
      if (vi >= 0) return current.values[static_cast<size_t>(vi)];
      return env.lookup(e.var);
    }
    case Expr::Kind::Const:
      return e.value;
    case Expr::Kind::Bin: {
      int64_t l = eval_expr(*e.lhs, env, current);
      int64_t r = eval_expr(*e.rhs, env, current);
      switch (e.op) {
        case AriOp::Add: return l + r;
        case AriOp::Sub: return l - r;
        case AriOp::Mul: return l * r;
      }
      break;
    }
  }
  throw std::logic_error("interpreter: malformed expression");
}

bool eval_guard(const Guard& g, const GroundEnv& env, const State& current)
{
  switch (g.kind) {
    case Guard::Kind::Lit:
      return g.lit_value;
    case Guard::Kind::Cmp: {
      int64_t l = eval_expr(*g.lhs, env, current);
      int64_t r = eval_expr(*g.rhs, env, current);
      switch (g.op) {
        case CmpOp::Eq: return l == r;
        case CmpOp::Ne: return l != r;
        case CmpOp::Lt: return l < r;
        case CmpOp::Le: return l <= r;
        case CmpOp::Gt: return l > r;
        case CmpOp::Ge: return l >= r;
      }
      return false;
    }
    case Guard::Kind::And:
      return eval_guard(*g.a, env, current) && eval_guard(*g.b, env, current);
    case Guard::Kind::Or:
      return eval_guard(*g.a, env, current) || eval_guard(*g.b, env, current);
    case Guard::Kind::Not:
      return !eval_guard(*g.a, env, current);
  }
  return false;
}

// Executes a body from `current`, appending every resulting post-state.
// An assignment whose value escapes the target's type range kills that
// execution path (finite domains), matching the symbolic translation.
void exec_body(const Body& b, const GroundEnv& env, State current, std::vector<State>& out)
{
  switch (b.kind) {
    case Body::Kind::Assign: {
      int vi = env.m->var_index(b.target);
      int64_t v = eval_expr(*b.value, env, current);
      const TypeDef& t = env.m->types[env.m->vars[static_cast<size_t>(vi)].type_index];
      if (v < t.lo || v > t.hi) return;  // infeasible path
      current.values[static_cast<size_t>(vi)] = v;
      out.push_back(std::move(current));
      break;
    }
    case Body::Kind::Guarded:
      if (eval_guard(*b.guard, env, current)) exec_body(*b.first, env, std::move(current), out);
      break;
    case Body::Kind::Seq: {
      std::vector<State> mids;
      exec_body(*b.first, env, std::move(current), mids);
      for (auto& mid : mids) exec_body(*b.second, env, std::move(mid), out);
      break;
    }
    case Body::Kind::Choice:
      exec_body(*b.first, env, current, out);
      exec_body(*b.second, env, std::move(current), out);
      break;
  }
}

// Odometer over parameter domains, lexicographic ascending.
struct TupleIter
{
  std::vector<int64_t> lo, hi, cur;
  bool done = false;

  explicit TupleIter(const std::vector<std::pair<int64_t, int64_t>>& ranges)
  {
    for (auto [l, h] : ranges) {
      lo.push_back(l);
      hi.push_back(h);
      cur.push_back(l);
      if (l > h) done = true;
    }
  }

  void next()
  {
    for (size_t i = cur.size(); i-- > 0;) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (size_t j = i + 1; j < cur.size(); ++j) cur[j] = lo[j];
        return;
      }
    }
    done = true;
  }
};

}  // namespace

std::vector<std::pair<Event, State>> interpret_step(const Model& m, const State& s,
                                                    ExplicitStats* stats)
{
  auto t0 = Clock::now();
  // (action definition index, args, post) is the shared sort key with the
  // symbolic engine's (label code, arg slots, post) projection.
  std::set<std::tuple<int, std::vector<int64_t>, State>> steps;
  for (const auto& entry : m.dood) {
    const Action& act = m.actions[static_cast<size_t>(entry.action_index)];
    std::vector<std::string> pnames;
    std::vector<std::pair<int64_t, int64_t>> ranges;
    for (size_t i = 0; i < act.params.size(); ++i) {
      pnames.push_back(act.params[i].name);
      const TypeDef& t = m.types[entry.bindings[i].type_index];
      ranges.emplace_back(t.lo, t.hi);
    }
    for (TupleIter it(ranges); !it.done; it.next()) {
      if (stats) ++stats->candidates;
      GroundEnv env{&m, &s, &pnames, &it.cur};
      if (!eval_guard(*act.guard, env, s)) continue;
      std::vector<State> posts;
      exec_body(*act.body, env, s, posts);
      for (auto& post : posts) {
        if (stats) ++stats->transitions;
        steps.emplace(entry.action_index, it.cur, std::move(post));
      }
    }
  }
  std::vector<std::pair<Event, State>> out;
  out.reserve(steps.size());
  for (const auto& [code, args, post] : steps)
    out.emplace_back(Event{m.actions[static_cast<size_t>(code)].label, args}, post);
  if (stats) stats->time_s += std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

Verdict explicit_check(const Model& orig, const Model& mut, int max_depth,
                       const ExplicitLimits& limits, ExplicitStats* stats)
{
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(limits.timeout_s));
  ExplicitStats local;
  ExplicitStats& st = stats ? *stats : local;

  auto out_of_budget = [&](Verdict& v) {
    if (st.candidates > limits.max_candidates) {
      v.kind = Verdict::Kind::Inconclusive;
      v.reason = "explicit candidate budget exhausted (" + std::to_string(limits.max_candidates) +
                 " parameter tuples)";
      return true;
    }
    if (Clock::now() > deadline) {
      v.kind = Verdict::Kind::Inconclusive;
      v.reason = "explicit engine timeout";
      return true;
    }
    return false;
  };

  // A state is unsafe when the mutant can take a step there that the original
  // cannot; the smallest such step (shared sort key) is the witness.
  auto find_divergence = [&](const State& s) -> std::optional<Witness> {
    auto mut_steps = interpret_step(mut, s, &st);
    auto orig_steps = interpret_step(orig, s, &st);
    auto key = [](const std::pair<Event, State>& p) {
      return std::tie(p.first.label, p.first.args, p.second.values);
    };
    auto less = [&key](const std::pair<Event, State>& a, const std::pair<Event, State>& b) {
      return key(a) < key(b);
    };
    std::set<std::pair<Event, State>, decltype(less)> orig_set(less);
    for (auto& p : orig_steps) orig_set.insert(std::move(p));
    for (auto& p : mut_steps) {
      if (!orig_set.count(p)) return Witness{p.first, p.second};
    }
    return std::nullopt;
  };

  Verdict v;
  State init{orig.init};
  if (auto w = find_divergence(init)) {
    v.kind = Verdict::Kind::NonConforming;
    v.unsafe = init;
    v.witness = *w;
    return v;
  }
  if (out_of_budget(v)) return v;

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
    ++st.states_expanded;
    auto steps = interpret_step(orig, node.state, &st);
    if (out_of_budget(v)) return v;
    for (auto& [ev, post] : steps) {
      if (visited.count(post)) continue;
      visited.insert(post);
      std::vector<Event> trace = node.trace;
      trace.push_back(ev);
      if (auto w = find_divergence(post)) {
        v.kind = Verdict::Kind::NonConforming;
        v.unsafe = post;
        v.trace = std::move(trace);
        v.witness = *w;
        return v;
      }
      if (out_of_budget(v)) return v;
      frontier.push_back({std::move(post), std::move(trace)});
    }
  }
  v.kind = Verdict::Kind::Conforming;
  v.depth = max_depth;
  return v;
}

}  // namespace asrefine
