#include "asrefine/semantics.hpp"

#include <map>

namespace asrefine {

int StepVarSpace::label_code(const std::string& label) const
{
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

StepVarSpace make_step_space(const Model& m, const Model* other)
{
  if (other) {
    if (other->vars.size() != m.vars.size())
      throw TranslateError("models disagree on the state vector", {});
    for (size_t i = 0; i < m.vars.size(); ++i)
      if (other->vars[i].name != m.vars[i].name)
        throw TranslateError("models disagree on state variable '" + m.vars[i].name + "'", {});
  }

  StepVarSpace s;
  s.n = static_cast<int>(m.vars.size());

  for (const auto& a : m.actions) {
    s.labels.push_back(a.label);
    s.arities.push_back(static_cast<int>(a.params.size()));
  }
  if (other) {
    for (const auto& a : other->actions) {
      int code = s.label_code(a.label);
      if (code < 0) {
        s.labels.push_back(a.label);
        s.arities.push_back(static_cast<int>(a.params.size()));
      } else if (s.arities[static_cast<size_t>(code)] != static_cast<int>(a.params.size())) {
        throw TranslateError("models disagree on the arity of '" + a.label + "'", a.loc);
      }
    }
  }

  s.arg_width = 0;
  for (int a : s.arities) s.arg_width = std::max(s.arg_width, a);

  // Lay out pre then post contiguously; widen with the other model's types.
  for (int i = 0; i < s.n; ++i) {
    const TypeDef& t = m.types[m.vars[static_cast<size_t>(i)].type_index];
    s.domains.push_back({t.lo, t.hi});
  }
  for (int i = 0; i < s.n; ++i) s.domains.push_back(s.domains[static_cast<size_t>(i)]);
  if (other) {
    for (int i = 0; i < s.n; ++i) {
      const TypeDef& t = other->types[other->vars[static_cast<size_t>(i)].type_index];
      Domain& pre = s.domains[static_cast<size_t>(s.pre(i))];
      Domain& post = s.domains[static_cast<size_t>(s.post(i))];
      pre.lo = post.lo = std::min(pre.lo, t.lo);
      pre.hi = post.hi = std::max(pre.hi, t.hi);
    }
  }

  s.domains.push_back({0, static_cast<int64_t>(s.labels.size()) - 1});

  // Argument slots get the hull over every type that can flow into them,
  // always including 0 (the fill value for unused slots).
  std::vector<Domain> arg_dom(static_cast<size_t>(s.arg_width), Domain{0, 0});
  auto widen_args = [&](const Model& mm) {
    for (const auto& a : mm.actions) {
      for (size_t k = 0; k < a.params.size(); ++k) {
        if (a.params[k].type_index < 0) continue;
        const TypeDef& t = mm.types[a.params[k].type_index];
        arg_dom[k].lo = std::min(arg_dom[k].lo, t.lo);
        arg_dom[k].hi = std::max(arg_dom[k].hi, t.hi);
      }
    }
    for (const auto& d : mm.dood) {
      for (size_t k = 0; k < d.bindings.size(); ++k) {
        if (d.bindings[k].type_index < 0) continue;
        const TypeDef& t = mm.types[d.bindings[k].type_index];
        arg_dom[k].lo = std::min(arg_dom[k].lo, t.lo);
        arg_dom[k].hi = std::max(arg_dom[k].hi, t.hi);
      }
    }
  };
  widen_args(m);
  if (other) widen_args(*other);
  for (const auto& d : arg_dom) s.domains.push_back(d);

  for (int i = 0; i < s.n; ++i) s.names.push_back(m.vars[static_cast<size_t>(i)].name);
  for (int i = 0; i < s.n; ++i) s.names.push_back(m.vars[static_cast<size_t>(i)].name + "'");
  s.names.push_back("event");
  for (int k = 0; k < s.arg_width; ++k) s.names.push_back("arg" + std::to_string(k));
  return s;
}

namespace {

// Symbolic environment: variable/parameter name -> linear expression over
// space variables. Assignments update it in place (substitution).
using Env = std::map<std::string, LinExpr>;

LinExpr translate_expr(const Expr& e, const Env& env)
{
  switch (e.kind) {
    case Expr::Kind::Var: {
      auto it = env.find(e.var);
      if (it == env.end())
        throw TranslateError("unresolved name '" + e.var + "' during translation", e.loc);
      return it->second;
    }
    case Expr::Kind::Const:
      return lin_const(e.value);
    case Expr::Kind::Bin: {
      LinExpr l = translate_expr(*e.lhs, env);
      LinExpr r = translate_expr(*e.rhs, env);
      switch (e.op) {
        case AriOp::Add: return lin_add(l, r);
        case AriOp::Sub: return lin_sub(l, r);
        case AriOp::Mul: {
          auto p = lin_mul(l, r);
          if (!p)
            throw TranslateError("nonlinear product (both factors contain variables)", e.loc);
          return *p;
        }
      }
      break;
    }
  }
  throw TranslateError("malformed expression", e.loc);
}

// lhs - rhs normalized against the closed atom set.
Formula translate_cmp(CmpOp op, const LinExpr& l, const LinExpr& r)
{
  LinExpr d = lin_sub(l, r);
  switch (op) {
    case CmpOp::Eq: return Formula::atom(d, Rel::Eq);
    case CmpOp::Ne: return Formula::atom(d, Rel::Ne);
    case CmpOp::Le: return Formula::atom(d, Rel::Le);
    case CmpOp::Lt: {
      d.constant += 1;  // l < r  <=>  l - r + 1 <= 0
      return Formula::atom(d, Rel::Le);
    }
    case CmpOp::Ge: return Formula::atom(lin_neg(d), Rel::Le);
    case CmpOp::Gt: {
      LinExpr nd = lin_neg(d);
      nd.constant += 1;
      return Formula::atom(nd, Rel::Le);
    }
  }
  return Formula::f();
}

Formula translate_guard(const Guard& g, const Env& env)
{
  switch (g.kind) {
    case Guard::Kind::Lit:
      return g.lit_value ? Formula::t() : Formula::f();
    case Guard::Kind::Cmp:
      return translate_cmp(g.op, translate_expr(*g.lhs, env), translate_expr(*g.rhs, env));
    case Guard::Kind::And: {
      std::vector<Formula> kids;
      kids.push_back(translate_guard(*g.a, env));
      kids.push_back(translate_guard(*g.b, env));
      return Formula::conj(std::move(kids));
    }
    case Guard::Kind::Or: {
      std::vector<Formula> kids;
      kids.push_back(translate_guard(*g.a, env));
      kids.push_back(translate_guard(*g.b, env));
      return Formula::disj(std::move(kids));
    }
    case Guard::Kind::Not:
      return negate(translate_guard(*g.a, env));
  }
  return Formula::f();
}

struct SymBranch
{
  std::vector<Formula> conjuncts;
  Env env;
};

// Symbolic execution of a body. Choice forks the branch list (sequential
// composition distributes over it), assignments substitute and pin the
// assigned expression into the target's type range so intermediate values of
// a Seq chain cannot escape their finite domain.
void exec_body(const Model& m, const Body& b, std::vector<SymBranch>& branches)
{
  switch (b.kind) {
    case Body::Kind::Assign: {
      int vi = m.var_index(b.target);
      if (vi < 0) throw TranslateError("assignment to unknown variable '" + b.target + "'", b.loc);
      const TypeDef& t = m.types[m.vars[static_cast<size_t>(vi)].type_index];
      for (auto& br : branches) {
        LinExpr val = translate_expr(*b.value, br.env);
        LinExpr below = lin_sub(lin_const(t.lo), val);  // lo - val <= 0
        LinExpr above = lin_sub(val, lin_const(t.hi));  // val - hi <= 0
        br.conjuncts.push_back(Formula::atom(std::move(below), Rel::Le));
        br.conjuncts.push_back(Formula::atom(std::move(above), Rel::Le));
        br.env[b.target] = std::move(val);
      }
      break;
    }
    case Body::Kind::Guarded: {
      for (auto& br : branches) br.conjuncts.push_back(translate_guard(*b.guard, br.env));
      exec_body(m, *b.first, branches);
      break;
    }
    case Body::Kind::Seq:
      exec_body(m, *b.first, branches);
      exec_body(m, *b.second, branches);
      break;
    case Body::Kind::Choice: {
      std::vector<SymBranch> left = branches;
      std::vector<SymBranch> right = std::move(branches);
      exec_body(m, *b.first, left);
      exec_body(m, *b.second, right);
      branches = std::move(left);
      for (auto& br : right) branches.push_back(std::move(br));
      break;
    }
  }
}

// Shared core: translate an action given per-parameter domains.
StepFormula translate_with_params(const Model& m, const Action& a,
                                  const std::vector<Domain>& param_domains,
                                  const StepVarSpace& space)
{
  int code = space.label_code(a.label);
  if (code < 0) throw TranslateError("action '" + a.label + "' has no label code", a.loc);

  std::vector<Formula> top;
  // Label pin: event = code.
  top.push_back(Formula::atom(lin_add(lin_var(space.label_var()), lin_const(-code)), Rel::Eq));
  // Argument slots: parameter domains for the first arity slots, 0 beyond.
  for (int k = 0; k < space.arg_width; ++k) {
    LinExpr arg = lin_var(space.arg_var(k));
    if (k < static_cast<int>(a.params.size())) {
      const Domain& d = param_domains[static_cast<size_t>(k)];
      top.push_back(Formula::atom(lin_sub(lin_const(d.lo), arg), Rel::Le));
      top.push_back(Formula::atom(lin_sub(arg, lin_const(d.hi)), Rel::Le));
    } else {
      top.push_back(Formula::atom(arg, Rel::Eq));
    }
  }

  Env env;
  for (int i = 0; i < space.n; ++i)
    env[m.vars[static_cast<size_t>(i)].name] = lin_var(space.pre(i));
  for (size_t k = 0; k < a.params.size(); ++k)
    env[a.params[k].name] = lin_var(space.arg_var(static_cast<int>(k)));

  top.push_back(translate_guard(*a.guard, env));

  std::vector<SymBranch> branches;
  branches.push_back(SymBranch{{}, env});
  exec_body(m, *a.body, branches);

  std::vector<Formula> alts;
  alts.reserve(branches.size());
  for (auto& br : branches) {
    std::vector<Formula> parts = std::move(br.conjuncts);
    // Frame: every post variable equals its (possibly updated) symbolic value.
    for (int i = 0; i < space.n; ++i) {
      const LinExpr& val = br.env[m.vars[static_cast<size_t>(i)].name];
      parts.push_back(Formula::atom(lin_sub(lin_var(space.post(i)), val), Rel::Eq));
    }
    alts.push_back(Formula::conj(std::move(parts)));
  }
  top.push_back(Formula::disj(std::move(alts)));
  return Formula::conj(std::move(top));
}

std::vector<Domain> action_param_domains(const Model& m, const Action& a)
{
  std::vector<Domain> doms;
  doms.reserve(a.params.size());
  for (const auto& p : a.params) {
    if (p.type_index < 0)
      throw TranslateError("parameter '" + p.name + "' of '" + a.label + "' has no type", p.loc);
    const TypeDef& t = m.types[p.type_index];
    doms.push_back({t.lo, t.hi});
  }
  return doms;
}

}  // namespace

StepFormula translate_action(const Model& m, const Action& a, const StepVarSpace& space)
{
  return translate_with_params(m, a, action_param_domains(m, a), space);
}

StepFormula translate_dood_entry(const Model& m, const DoodEntry& entry,
                                 const StepVarSpace& space)
{
  if (entry.action_index < 0)
    throw TranslateError("do-od entry '" + entry.label + "' is unresolved", entry.loc);
  const Action& a = m.actions[static_cast<size_t>(entry.action_index)];
  std::vector<Domain> doms;
  doms.reserve(entry.bindings.size());
  for (const auto& b : entry.bindings) {
    if (b.type_index < 0)
      throw TranslateError("do-od binding '" + b.param_name + "' has no type", b.loc);
    const TypeDef& t = m.types[b.type_index];
    doms.push_back({t.lo, t.hi});
  }
  return translate_with_params(m, a, doms, space);
}

StepFormula translate_system(const Model& m, const StepVarSpace& space)
{
  std::vector<Formula> alts;
  alts.reserve(m.dood.size());
  for (const auto& entry : m.dood) alts.push_back(translate_dood_entry(m, entry, space));
  return Formula::disj(std::move(alts));
}

}  // namespace asrefine
