#include "asrefine/ast.hpp"

#include <sstream>

namespace asrefine {

// ---------------------------------------------------------------------------
// Constructors / clones

std::unique_ptr<Expr> mk_var(std::string name, SourceLoc loc)
{
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::Var;
  e->var = std::move(name);
  e->loc = loc;
  return e;
}

std::unique_ptr<Expr> mk_const(int64_t v, SourceLoc loc)
{
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::Const;
  e->value = v;
  e->loc = loc;
  return e;
}

std::unique_ptr<Expr> mk_bin(AriOp op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r,
                             SourceLoc loc)
{
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::Bin;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  e->loc = loc;
  return e;
}

std::unique_ptr<Expr> Expr::clone() const
{
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->var = var;
  e->value = value;
  e->op = op;
  e->loc = loc;
  if (lhs) e->lhs = lhs->clone();
  if (rhs) e->rhs = rhs->clone();
  return e;
}

const char* cmp_op_token(CmpOp op)
{
  switch (op) {
    case CmpOp::Eq: return "#=";
    case CmpOp::Ne: return "#\\=";
    case CmpOp::Lt: return "#<";
    case CmpOp::Le: return "#=<";
    case CmpOp::Gt: return "#>";
    case CmpOp::Ge: return "#>=";
  }
  return "#=";
}

std::unique_ptr<Guard> mk_lit(bool v, SourceLoc loc)
{
  auto g = std::make_unique<Guard>();
  g->kind = Guard::Kind::Lit;
  g->lit_value = v;
  g->loc = loc;
  return g;
}

std::unique_ptr<Guard> mk_cmp(CmpOp op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r,
                              SourceLoc loc)
{
  auto g = std::make_unique<Guard>();
  g->kind = Guard::Kind::Cmp;
  g->op = op;
  g->lhs = std::move(l);
  g->rhs = std::move(r);
  g->loc = loc;
  return g;
}

static std::unique_ptr<Guard> mk_binary_guard(Guard::Kind k, std::unique_ptr<Guard> a,
                                              std::unique_ptr<Guard> b, SourceLoc loc)
{
  auto g = std::make_unique<Guard>();
  g->kind = k;
  g->a = std::move(a);
  g->b = std::move(b);
  g->loc = loc;
  return g;
}

std::unique_ptr<Guard> mk_and(std::unique_ptr<Guard> a, std::unique_ptr<Guard> b, SourceLoc loc)
{
  return mk_binary_guard(Guard::Kind::And, std::move(a), std::move(b), loc);
}

std::unique_ptr<Guard> mk_or(std::unique_ptr<Guard> a, std::unique_ptr<Guard> b, SourceLoc loc)
{
  return mk_binary_guard(Guard::Kind::Or, std::move(a), std::move(b), loc);
}

std::unique_ptr<Guard> mk_not(std::unique_ptr<Guard> a, SourceLoc loc)
{
  return mk_binary_guard(Guard::Kind::Not, std::move(a), nullptr, loc);
}

std::unique_ptr<Guard> Guard::clone() const
{
  auto g = std::make_unique<Guard>();
  g->kind = kind;
  g->lit_value = lit_value;
  g->op = op;
  g->loc = loc;
  if (lhs) g->lhs = lhs->clone();
  if (rhs) g->rhs = rhs->clone();
  if (a) g->a = a->clone();
  if (b) g->b = b->clone();
  return g;
}

std::unique_ptr<Body> mk_assign(std::string target, std::unique_ptr<Expr> value, SourceLoc loc)
{
  auto b = std::make_unique<Body>();
  b->kind = Body::Kind::Assign;
  b->target = std::move(target);
  b->value = std::move(value);
  b->loc = loc;
  return b;
}

std::unique_ptr<Body> mk_guarded(std::unique_ptr<Guard> g, std::unique_ptr<Body> inner,
                                 SourceLoc loc)
{
  auto b = std::make_unique<Body>();
  b->kind = Body::Kind::Guarded;
  b->guard = std::move(g);
  b->first = std::move(inner);
  b->loc = loc;
  return b;
}

static std::unique_ptr<Body> mk_binary_body(Body::Kind k, std::unique_ptr<Body> a,
                                            std::unique_ptr<Body> b, SourceLoc loc)
{
  auto n = std::make_unique<Body>();
  n->kind = k;
  n->first = std::move(a);
  n->second = std::move(b);
  n->loc = loc;
  return n;
}

std::unique_ptr<Body> mk_seq(std::unique_ptr<Body> a, std::unique_ptr<Body> b, SourceLoc loc)
{
  return mk_binary_body(Body::Kind::Seq, std::move(a), std::move(b), loc);
}

std::unique_ptr<Body> mk_choice(std::unique_ptr<Body> a, std::unique_ptr<Body> b, SourceLoc loc)
{
  return mk_binary_body(Body::Kind::Choice, std::move(a), std::move(b), loc);
}

std::unique_ptr<Body> Body::clone() const
{
  auto n = std::make_unique<Body>();
  n->kind = kind;
  n->target = target;
  n->loc = loc;
  if (value) n->value = value->clone();
  if (guard) n->guard = guard->clone();
  if (first) n->first = first->clone();
  if (second) n->second = second->clone();
  return n;
}

Action Action::clone() const
{
  Action a;
  a.label = label;
  a.params = params;
  a.loc = loc;
  if (guard) a.guard = guard->clone();
  if (body) a.body = body->clone();
  return a;
}

DoodEntry DoodEntry::clone() const { return *this; }

Model Model::clone() const
{
  Model m;
  m.types = types;
  m.vars = vars;
  m.init = init;
  m.actions.reserve(actions.size());
  for (const auto& a : actions) m.actions.push_back(a.clone());
  m.dood = dood;
  return m;
}

int Model::type_index(const std::string& name) const
{
  for (size_t i = 0; i < types.size(); ++i)
    if (types[i].name == name) return static_cast<int>(i);
  return -1;
}

int Model::var_index(const std::string& name) const
{
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

int Model::action_index(const std::string& label) const
{
  for (size_t i = 0; i < actions.size(); ++i)
    if (actions[i].label == label) return static_cast<int>(i);
  return -1;
}

int Model::widest_type_index() const
{
  int best = -1;
  int64_t best_span = -1;
  for (size_t i = 0; i < types.size(); ++i) {
    int64_t span = types[i].hi - types[i].lo;
    if (span > best_span) {
      best_span = span;
      best = static_cast<int>(i);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Node paths

static NodeRef step_expr(Expr* e, uint32_t idx)
{
  NodeRef r;
  if (e->kind == Expr::Kind::Bin && idx <= 1) {
    r.kind = NodeRef::Kind::Expr;
    r.expr = idx == 0 ? e->lhs.get() : e->rhs.get();
  }
  return r;
}

static NodeRef step_guard(Guard* g, uint32_t idx)
{
  NodeRef r;
  switch (g->kind) {
    case Guard::Kind::Cmp:
      if (idx <= 1) {
        r.kind = NodeRef::Kind::Expr;
        r.expr = idx == 0 ? g->lhs.get() : g->rhs.get();
      }
      break;
    case Guard::Kind::And:
    case Guard::Kind::Or:
      if (idx <= 1) {
        r.kind = NodeRef::Kind::Guard;
        r.guard = idx == 0 ? g->a.get() : g->b.get();
      }
      break;
    case Guard::Kind::Not:
      if (idx == 0) {
        r.kind = NodeRef::Kind::Guard;
        r.guard = g->a.get();
      }
      break;
    case Guard::Kind::Lit:
      break;
  }
  return r;
}

static NodeRef step_body(Body* b, uint32_t idx)
{
  NodeRef r;
  switch (b->kind) {
    case Body::Kind::Assign:
      if (idx == 0) {
        r.kind = NodeRef::Kind::Expr;
        r.expr = b->value.get();
      }
      break;
    case Body::Kind::Guarded:
      if (idx == 0) {
        r.kind = NodeRef::Kind::Guard;
        r.guard = b->guard.get();
      } else if (idx == 1) {
        r.kind = NodeRef::Kind::Body;
        r.body = b->first.get();
      }
      break;
    case Body::Kind::Seq:
    case Body::Kind::Choice:
      if (idx <= 1) {
        r.kind = NodeRef::Kind::Body;
        r.body = idx == 0 ? b->first.get() : b->second.get();
      }
      break;
  }
  return r;
}

NodeRef resolve_path(Model& m, const NodePath& path)
{
  NodeRef cur;
  if (path.size() < 2) return cur;
  uint32_t section = path[0];
  uint32_t elem = path[1];
  switch (section) {
    case kSectionTypes:
      if (elem < m.types.size()) {
        cur.kind = NodeRef::Kind::Type;
        cur.type = &m.types[elem];
      }
      break;
    case kSectionVars:
      if (elem < m.vars.size()) {
        cur.kind = NodeRef::Kind::Var;
        cur.var = &m.vars[elem];
      }
      break;
    case kSectionActions:
      if (elem < m.actions.size()) {
        cur.kind = NodeRef::Kind::Action;
        cur.action = &m.actions[elem];
      }
      break;
    case kSectionDood:
      if (elem < m.dood.size()) {
        cur.kind = NodeRef::Kind::DoodEntry;
        cur.dood = &m.dood[elem];
      }
      break;
    default:
      break;
  }
  for (size_t i = 2; i < path.size() && cur.kind != NodeRef::Kind::None; ++i) {
    uint32_t idx = path[i];
    NodeRef next;
    switch (cur.kind) {
      case NodeRef::Kind::Action:
        if (idx == 0) {
          next.kind = NodeRef::Kind::Guard;
          next.guard = cur.action->guard.get();
        } else if (idx == 1) {
          next.kind = NodeRef::Kind::Body;
          next.body = cur.action->body.get();
        }
        break;
      case NodeRef::Kind::Guard:
        next = step_guard(cur.guard, idx);
        break;
      case NodeRef::Kind::Body:
        next = step_body(cur.body, idx);
        break;
      case NodeRef::Kind::Expr:
        next = step_expr(cur.expr, idx);
        break;
      default:
        break;
    }
    if (next.kind != NodeRef::Kind::None) {
      switch (next.kind) {
        case NodeRef::Kind::Guard:
          if (!next.guard) next.kind = NodeRef::Kind::None;
          break;
        case NodeRef::Kind::Body:
          if (!next.body) next.kind = NodeRef::Kind::None;
          break;
        case NodeRef::Kind::Expr:
          if (!next.expr) next.kind = NodeRef::Kind::None;
          break;
        default:
          break;
      }
    }
    cur = next;
  }
  return cur;
}

std::string path_to_string(const NodePath& path)
{
  std::string s;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(path[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Pretty printing

namespace {

int expr_prec(const Expr& e)
{
  if (e.kind != Expr::Kind::Bin) return 3;
  return e.op == AriOp::Mul ? 2 : 1;
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec, bool right_operand)
{
  int prec = expr_prec(e);
  bool parens = prec < parent_prec || (right_operand && prec == parent_prec);
  if (parens) os << '(';
  switch (e.kind) {
    case Expr::Kind::Var:
      os << e.var;
      break;
    case Expr::Kind::Const:
      os << e.value;
      break;
    case Expr::Kind::Bin: {
      const char* tok = e.op == AriOp::Add ? " + " : e.op == AriOp::Sub ? " - " : " * ";
      print_expr(os, *e.lhs, prec, false);
      os << tok;
      print_expr(os, *e.rhs, prec, true);
      break;
    }
  }
  if (parens) os << ')';
}

int guard_prec(const Guard& g)
{
  switch (g.kind) {
    case Guard::Kind::Or: return 1;
    case Guard::Kind::And: return 2;
    case Guard::Kind::Not: return 3;
    default: return 4;
  }
}

void print_guard(std::ostringstream& os, const Guard& g, int parent_prec, bool right_operand)
{
  int prec = guard_prec(g);
  bool parens = prec < parent_prec || (right_operand && prec == parent_prec);
  if (parens) os << '(';
  switch (g.kind) {
    case Guard::Kind::Lit:
      os << (g.lit_value ? "true" : "false");
      break;
    case Guard::Kind::Cmp:
      print_expr(os, *g.lhs, 0, false);
      os << ' ' << cmp_op_token(g.op) << ' ';
      print_expr(os, *g.rhs, 0, false);
      break;
    case Guard::Kind::And:
      print_guard(os, *g.a, prec, false);
      os << " /\\ ";
      print_guard(os, *g.b, prec, true);
      break;
    case Guard::Kind::Or:
      print_guard(os, *g.a, prec, false);
      os << " \\/ ";
      print_guard(os, *g.b, prec, true);
      break;
    case Guard::Kind::Not:
      os << "\\+ ";
      print_guard(os, *g.a, prec, true);
      break;
  }
  if (parens) os << ')';
}

// Bodies print so that reparsing folds back to the identical tree: choice and
// seq chains are left-nested, guarded commands always parenthesize guard and
// inner body.
void print_body(std::ostringstream& os, const Body& b, bool as_unit)
{
  switch (b.kind) {
    case Body::Kind::Assign:
      os << b.target << " := ";
      print_expr(os, *b.value, 0, false);
      break;
    case Body::Kind::Guarded:
      os << '(';
      print_guard(os, *b.guard, 0, false);
      os << ") => (";
      print_body(os, *b.first, false);
      os << ')';
      break;
    case Body::Kind::Seq:
      if (as_unit) os << '(';
      print_body(os, *b.first, b.first->kind == Body::Kind::Choice);
      os << "; ";
      print_body(os, *b.second,
                 b.second->kind == Body::Kind::Seq || b.second->kind == Body::Kind::Choice);
      if (as_unit) os << ')';
      break;
    case Body::Kind::Choice:
      if (as_unit) os << '(';
      print_body(os, *b.first, false);
      os << " [] ";
      print_body(os, *b.second, b.second->kind == Body::Kind::Choice);
      if (as_unit) os << ')';
      break;
  }
}

void print_action(std::ostringstream& os, const Action& a)
{
  os << '\'' << a.label << '\'';
  if (!a.params.empty()) {
    os << '(';
    for (size_t i = 0; i < a.params.size(); ++i) {
      if (i) os << ", ";
      os << a.params[i].name;
    }
    os << ')';
  }
  os << "::(";
  print_guard(os, *a.guard, 0, false);
  os << ") => (";
  print_body(os, *a.body, false);
  os << ')';
}

void print_dood_entry(std::ostringstream& os, const DoodEntry& d)
{
  if (!d.bindings.empty()) {
    os << '[';
    for (size_t i = 0; i < d.bindings.size(); ++i) {
      if (i) os << ", ";
      os << d.bindings[i].param_name << ':' << d.bindings[i].type_name;
    }
    os << "]:";
  }
  os << '\'' << d.label << '\'';
  if (!d.bindings.empty()) {
    os << '(';
    for (size_t i = 0; i < d.bindings.size(); ++i) {
      if (i) os << ", ";
      os << d.bindings[i].param_name;
    }
    os << ')';
  }
}

}  // namespace

std::string pretty_print(const Expr& e)
{
  std::ostringstream os;
  print_expr(os, e, 0, false);
  return os.str();
}

std::string pretty_print(const Guard& g)
{
  std::ostringstream os;
  print_guard(os, g, 0, false);
  return os.str();
}

std::string pretty_print(const Body& b)
{
  std::ostringstream os;
  print_body(os, b, false);
  return os.str();
}

std::string pretty_print(const Action& a)
{
  std::ostringstream os;
  print_action(os, a);
  return os.str();
}

std::string pretty_print(const Model& m)
{
  std::ostringstream os;
  for (const auto& t : m.types)
    os << "type(" << t.name << ", X) :- X in " << t.lo << ".." << t.hi << ".\n";
  os << '\n';
  // Group consecutive same-typed variables into one var clause.
  for (size_t i = 0; i < m.vars.size();) {
    size_t j = i;
    while (j < m.vars.size() && m.vars[j].type_name == m.vars[i].type_name) ++j;
    os << "var([";
    for (size_t k = i; k < j; ++k) {
      if (k > i) os << ", ";
      os << m.vars[k].name;
    }
    os << "], " << m.vars[i].type_name << ").\n";
    i = j;
  }
  os << "state_def([";
  for (size_t i = 0; i < m.vars.size(); ++i) {
    if (i) os << ", ";
    os << m.vars[i].name;
  }
  os << "]).\n\n";
  os << "init([";
  for (size_t i = 0; i < m.init.size(); ++i) {
    if (i) os << ", ";
    os << m.init[i];
  }
  os << "]).\n\n";
  os << "as :-\n  actions (\n";
  for (size_t i = 0; i < m.actions.size(); ++i) {
    os << "    ";
    print_action(os, m.actions[i]);
    if (i + 1 < m.actions.size()) os << ',';
    os << '\n';
  }
  os << "  ),\n  dood (\n";
  for (size_t i = 0; i < m.dood.size(); ++i) {
    os << "    ";
    if (i) os << "[] ";
    print_dood_entry(os, m.dood[i]);
    os << '\n';
  }
  os << "  ).\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Structural equality

bool structurally_equal(const Expr& a, const Expr& b)
{
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Var: return a.var == b.var;
    case Expr::Kind::Const: return a.value == b.value;
    case Expr::Kind::Bin:
      return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
  return false;
}

bool structurally_equal(const Guard& a, const Guard& b)
{
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Guard::Kind::Lit: return a.lit_value == b.lit_value;
    case Guard::Kind::Cmp:
      return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
    case Guard::Kind::And:
    case Guard::Kind::Or:
      return structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
    case Guard::Kind::Not:
      return structurally_equal(*a.a, *b.a);
  }
  return false;
}

bool structurally_equal(const Body& a, const Body& b)
{
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Body::Kind::Assign:
      return a.target == b.target && structurally_equal(*a.value, *b.value);
    case Body::Kind::Guarded:
      return structurally_equal(*a.guard, *b.guard) && structurally_equal(*a.first, *b.first);
    case Body::Kind::Seq:
    case Body::Kind::Choice:
      return structurally_equal(*a.first, *b.first) && structurally_equal(*a.second, *b.second);
  }
  return false;
}

bool structurally_equal(const Model& a, const Model& b)
{
  if (a.types.size() != b.types.size() || a.vars.size() != b.vars.size() ||
      a.init != b.init || a.actions.size() != b.actions.size() || a.dood.size() != b.dood.size())
    return false;
  for (size_t i = 0; i < a.types.size(); ++i) {
    if (a.types[i].name != b.types[i].name || a.types[i].lo != b.types[i].lo ||
        a.types[i].hi != b.types[i].hi)
      return false;
  }
  for (size_t i = 0; i < a.vars.size(); ++i) {
    if (a.vars[i].name != b.vars[i].name || a.vars[i].type_name != b.vars[i].type_name)
      return false;
  }
  for (size_t i = 0; i < a.actions.size(); ++i) {
    const Action& x = a.actions[i];
    const Action& y = b.actions[i];
    if (x.label != y.label || x.params.size() != y.params.size()) return false;
    for (size_t k = 0; k < x.params.size(); ++k)
      if (x.params[k].name != y.params[k].name) return false;
    if (!structurally_equal(*x.guard, *y.guard) || !structurally_equal(*x.body, *y.body))
      return false;
  }
  for (size_t i = 0; i < a.dood.size(); ++i) {
    const DoodEntry& x = a.dood[i];
    const DoodEntry& y = b.dood[i];
    if (x.label != y.label || x.bindings.size() != y.bindings.size()) return false;
    for (size_t k = 0; k < x.bindings.size(); ++k) {
      if (x.bindings[k].param_name != y.bindings[k].param_name ||
          x.bindings[k].type_name != y.bindings[k].type_name)
        return false;
    }
  }
  return true;
}

}  // namespace asrefine
