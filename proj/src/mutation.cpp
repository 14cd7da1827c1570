#include "asrefine/mutation.hpp"

#include <algorithm>

namespace asrefine {

const char* to_string(MutantOp op)
{
  switch (op) {
    case MutantOp::GuardTrue: return "guard_true";
    case MutantOp::CompOpInvert: return "comp_invert";
    case MutantOp::IntConstIncrement: return "int_inc";
  }
  return "?";
}

std::optional<MutantOp> mutant_op_from_string(std::string_view s)
{
  if (s == "guard_true") return MutantOp::GuardTrue;
  if (s == "comp_invert") return MutantOp::CompOpInvert;
  if (s == "int_inc") return MutantOp::IntConstIncrement;
  return std::nullopt;
}

namespace {

int type_of_name(const Model& m, const Action& a, const std::string& name)
{
  int vi = m.var_index(name);
  if (vi >= 0) return m.vars[static_cast<size_t>(vi)].type_index;
  for (const auto& p : a.params)
    if (p.name == name) return p.type_index;
  return -1;
}

class SiteCollector
{
 public:
  SiteCollector(const Model& m, const MutationOps& ops) : m_(m), ops_(ops) {}

  std::vector<MutantSpec> run()
  {
    for (size_t i = 0; i < m_.actions.size(); ++i) collect_action(m_.actions[i], i);
    std::vector<MutantSpec> out;
    out.reserve(guard_true_.size() + comp_invert_.size() + int_inc_.size());
    for (auto& s : guard_true_) out.push_back(std::move(s));
    for (auto& s : comp_invert_) out.push_back(std::move(s));
    for (auto& s : int_inc_) out.push_back(std::move(s));
    return out;
  }

 private:
  void collect_action(const Action& a, size_t idx)
  {
    action_ = &a;
    NodePath base{kSectionActions, static_cast<uint32_t>(idx)};
    NodePath guard_path = base;
    guard_path.push_back(0);
    add_guard_site(*a.guard, guard_path);
    walk_guard(*a.guard, guard_path);
    NodePath body_path = base;
    body_path.push_back(1);
    walk_body(*a.body, body_path);
  }

  void add_guard_site(const Guard& g, const NodePath& path)
  {
    if (!ops_.guard_true || g.is_literal_true()) return;
    MutantSpec s;
    s.op = MutantOp::GuardTrue;
    s.location = path;
    s.action_label = action_->label;
    s.original = pretty_print(g);
    s.replacement = "true";
    s.loc = g.loc;
    guard_true_.push_back(std::move(s));
  }

  void walk_body(const Body& b, const NodePath& path)
  {
    switch (b.kind) {
      case Body::Kind::Assign: {
        NodePath vp = path;
        vp.push_back(0);
        int vi = m_.var_index(b.target);
        int ti = vi >= 0 ? m_.vars[static_cast<size_t>(vi)].type_index : -1;
        walk_expr(*b.value, vp, ti);
        break;
      }
      case Body::Kind::Guarded: {
        NodePath gp = path;
        gp.push_back(0);
        add_guard_site(*b.guard, gp);
        walk_guard(*b.guard, gp);
        NodePath ip = path;
        ip.push_back(1);
        walk_body(*b.first, ip);
        break;
      }
      case Body::Kind::Seq:
      case Body::Kind::Choice: {
        NodePath fp = path;
        fp.push_back(0);
        walk_body(*b.first, fp);
        NodePath sp = path;
        sp.push_back(1);
        walk_body(*b.second, sp);
        break;
      }
    }
  }

  void walk_guard(const Guard& g, const NodePath& path)
  {
    switch (g.kind) {
      case Guard::Kind::Lit:
        break;
      case Guard::Kind::Cmp: {
        if (ops_.comp_invert && (g.op == CmpOp::Eq || g.op == CmpOp::Ne)) {
          MutantSpec s;
          s.op = MutantOp::CompOpInvert;
          s.location = path;
          s.action_label = action_->label;
          s.original = cmp_op_token(g.op);
          s.replacement = cmp_op_token(g.op == CmpOp::Eq ? CmpOp::Ne : CmpOp::Eq);
          s.loc = g.loc;
          comp_invert_.push_back(std::move(s));
        }
        // Constants on either side wrap in the domain of the plain variable
        // on the opposite side, when there is one.
        int lhs_ctx = g.rhs->kind == Expr::Kind::Var ? type_of_name(m_, *action_, g.rhs->var) : -1;
        int rhs_ctx = g.lhs->kind == Expr::Kind::Var ? type_of_name(m_, *action_, g.lhs->var) : -1;
        NodePath lp = path;
        lp.push_back(0);
        walk_expr(*g.lhs, lp, lhs_ctx);
        NodePath rp = path;
        rp.push_back(1);
        walk_expr(*g.rhs, rp, rhs_ctx);
        break;
      }
      case Guard::Kind::And:
      case Guard::Kind::Or: {
        NodePath ap = path;
        ap.push_back(0);
        walk_guard(*g.a, ap);
        NodePath bp = path;
        bp.push_back(1);
        walk_guard(*g.b, bp);
        break;
      }
      case Guard::Kind::Not: {
        NodePath ap = path;
        ap.push_back(0);
        walk_guard(*g.a, ap);
        break;
      }
    }
  }

  void walk_expr(const Expr& e, const NodePath& path, int ctx_type)
  {
    switch (e.kind) {
      case Expr::Kind::Var:
        break;
      case Expr::Kind::Const: {
        if (!ops_.int_inc) break;
        int ti = ctx_type >= 0 ? ctx_type : m_.widest_type_index();
        if (ti < 0) break;  // no types declared at all
        const TypeDef& t = m_.types[static_cast<size_t>(ti)];
        MutantSpec s;
        s.op = MutantOp::IntConstIncrement;
        s.location = path;
        s.action_label = action_->label;
        s.original = std::to_string(e.value);
        s.replacement_value = e.value == t.hi ? t.lo : e.value + 1;
        s.replacement = std::to_string(s.replacement_value);
        s.loc = e.loc;
        int_inc_.push_back(std::move(s));
        break;
      }
      case Expr::Kind::Bin: {
        NodePath lp = path;
        lp.push_back(0);
        walk_expr(*e.lhs, lp, ctx_type);
        NodePath rp = path;
        rp.push_back(1);
        walk_expr(*e.rhs, rp, ctx_type);
        break;
      }
    }
  }

  const Model& m_;
  const MutationOps& ops_;
  const Action* action_ = nullptr;
  std::vector<MutantSpec> guard_true_;
  std::vector<MutantSpec> comp_invert_;
  std::vector<MutantSpec> int_inc_;
};

}  // namespace

std::vector<MutantSpec> enumerate_mutation_sites(const Model& m, const MutationOps& ops)
{
  return SiteCollector(m, ops).run();
}

Model apply_mutation(const Model& m, const MutantSpec& spec)
{
  // Only locations the enumerator itself would produce are applicable; this
  // re-derivation also recomputes the wrap value from the site's context.
  MutationOps only;
  only.guard_true = spec.op == MutantOp::GuardTrue;
  only.comp_invert = spec.op == MutantOp::CompOpInvert;
  only.int_inc = spec.op == MutantOp::IntConstIncrement;
  std::vector<MutantSpec> sites = enumerate_mutation_sites(m, only);
  const MutantSpec* site = nullptr;
  for (const auto& s : sites) {
    if (s.location == spec.location) {
      site = &s;
      break;
    }
  }
  if (!site)
    throw MutationError("path " + path_to_string(spec.location) + " is not a valid " +
                        to_string(spec.op) + " site");

  Model out = m.clone();
  NodeRef node = resolve_path(out, site->location);
  switch (spec.op) {
    case MutantOp::GuardTrue: {
      // The site is the guard slot of an action or guarded command; swap the
      // owning pointer on the parent.
      NodePath parent_path(site->location.begin(), site->location.end() - 1);
      NodeRef parent = resolve_path(out, parent_path);
      if (parent.kind == NodeRef::Kind::Action)
        parent.action->guard = mk_lit(true, node.guard->loc);
      else if (parent.kind == NodeRef::Kind::Body && parent.body->kind == Body::Kind::Guarded)
        parent.body->guard = mk_lit(true, node.guard->loc);
      else
        throw MutationError("guard_true site has no guard-owning parent");
      break;
    }
    case MutantOp::CompOpInvert:
      node.guard->op = node.guard->op == CmpOp::Eq ? CmpOp::Ne : CmpOp::Eq;
      break;
    case MutantOp::IntConstIncrement:
      node.expr->value = site->replacement_value;
      break;
  }
  return out;
}

std::vector<Mutant> enumerate_mutants(const Model& m, const MutationOps& ops)
{
  std::vector<MutantSpec> sites = enumerate_mutation_sites(m, ops);
  std::vector<Mutant> out;
  out.reserve(sites.size());
  for (auto& s : sites) {
    Model mm = apply_mutation(m, s);
    out.push_back(Mutant{std::move(s), std::move(mm)});
  }
  return out;
}

}  // namespace asrefine
