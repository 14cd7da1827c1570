#include "asrefine/formula.hpp"

#include <algorithm>
#include <sstream>

namespace asrefine {

LinExpr lin_var(VarId v)
{
  LinExpr e;
  e.terms.emplace_back(v, 1);
  return e;
}

LinExpr lin_const(int64_t k)
{
  LinExpr e;
  e.constant = k;
  return e;
}

LinExpr lin_add(const LinExpr& a, const LinExpr& b)
{
  LinExpr out;
  out.constant = a.constant + b.constant;
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j >= b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      out.terms.push_back(a.terms[i++]);
    } else if (i >= a.terms.size() || b.terms[j].first < a.terms[i].first) {
      out.terms.push_back(b.terms[j++]);
    } else {
      int64_t c = a.terms[i].second + b.terms[j].second;
      if (c != 0) out.terms.emplace_back(a.terms[i].first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

LinExpr lin_scale(const LinExpr& a, int64_t k)
{
  LinExpr out;
  if (k == 0) return out;
  out.constant = a.constant * k;
  out.terms.reserve(a.terms.size());
  for (auto [v, c] : a.terms) out.terms.emplace_back(v, c * k);
  return out;
}

LinExpr lin_neg(const LinExpr& a) { return lin_scale(a, -1); }

LinExpr lin_sub(const LinExpr& a, const LinExpr& b) { return lin_add(a, lin_neg(b)); }

std::optional<LinExpr> lin_mul(const LinExpr& a, const LinExpr& b)
{
  if (a.is_const()) return lin_scale(b, a.constant);
  if (b.is_const()) return lin_scale(a, b.constant);
  return std::nullopt;
}

int64_t lin_eval(const LinExpr& e, const std::vector<int64_t>& values)
{
  int64_t acc = e.constant;
  for (auto [v, c] : e.terms) acc += c * values[static_cast<size_t>(v)];
  return acc;
}

Formula Formula::t()
{
  Formula f;
  f.kind = Kind::True;
  return f;
}

Formula Formula::f()
{
  Formula f;
  f.kind = Kind::False;
  return f;
}

Formula Formula::atom(LinExpr e, Rel r)
{
  if (e.is_const()) {
    bool sat = false;
    switch (r) {
      case Rel::Eq: sat = e.constant == 0; break;
      case Rel::Ne: sat = e.constant != 0; break;
      case Rel::Le: sat = e.constant <= 0; break;
    }
    return sat ? t() : f();
  }
  Formula f;
  f.kind = Kind::Atom;
  f.rel = r;
  f.expr = std::move(e);
  return f;
}

Formula Formula::conj(std::vector<Formula> parts)
{
  std::vector<Formula> out;
  for (auto& p : parts) {
    switch (p.kind) {
      case Kind::True: break;
      case Kind::False: return f();
      case Kind::And:
        for (auto& c : p.children) out.push_back(std::move(c));
        break;
      default: out.push_back(std::move(p));
    }
  }
  if (out.empty()) return t();
  if (out.size() == 1) return std::move(out.front());
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(out);
  return f;
}

Formula Formula::disj(std::vector<Formula> parts)
{
  std::vector<Formula> out;
  for (auto& p : parts) {
    switch (p.kind) {
      case Kind::False: break;
      case Kind::True: return t();
      case Kind::Or:
        for (auto& c : p.children) out.push_back(std::move(c));
        break;
      default: out.push_back(std::move(p));
    }
  }
  if (out.empty()) return f();
  if (out.size() == 1) return std::move(out.front());
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(out);
  return f;
}

Formula negate(const Formula& f)
{
  switch (f.kind) {
    case Formula::Kind::True:
      return Formula::f();
    case Formula::Kind::False:
      return Formula::t();
    case Formula::Kind::Atom:
      switch (f.rel) {
        case Rel::Eq: return Formula::atom(f.expr, Rel::Ne);
        case Rel::Ne: return Formula::atom(f.expr, Rel::Eq);
        case Rel::Le: {
          // !(e <= 0)  <=>  e >= 1  <=>  -e + 1 <= 0
          LinExpr e = lin_neg(f.expr);
          e.constant += 1;
          return Formula::atom(std::move(e), Rel::Le);
        }
      }
      return Formula::f();
    case Formula::Kind::And: {
      std::vector<Formula> kids;
      kids.reserve(f.children.size());
      for (const auto& c : f.children) kids.push_back(negate(c));
      return Formula::disj(std::move(kids));
    }
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children.size());
      for (const auto& c : f.children) kids.push_back(negate(c));
      return Formula::conj(std::move(kids));
    }
  }
  return Formula::f();
}

bool eval(const Formula& f, const std::vector<int64_t>& values)
{
  switch (f.kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom: {
      int64_t v = lin_eval(f.expr, values);
      switch (f.rel) {
        case Rel::Eq: return v == 0;
        case Rel::Ne: return v != 0;
        case Rel::Le: return v <= 0;
      }
      return false;
    }
    case Formula::Kind::And:
      for (const auto& c : f.children)
        if (!eval(c, values)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children)
        if (eval(c, values)) return true;
      return false;
  }
  return false;
}

namespace {

void var_name(std::ostringstream& os, VarId v, const std::vector<std::string>& names)
{
  if (v >= 0 && static_cast<size_t>(v) < names.size() && !names[static_cast<size_t>(v)].empty())
    os << names[static_cast<size_t>(v)];
  else
    os << 'v' << v;
}

void sexpr_lin(std::ostringstream& os, const LinExpr& e, const std::vector<std::string>& names)
{
  size_t parts = e.terms.size() + (e.constant != 0 || e.terms.empty() ? 1 : 0);
  if (parts > 1) os << "(+ ";
  bool first = true;
  for (auto [v, c] : e.terms) {
    if (!first) os << ' ';
    first = false;
    if (c == 1) {
      var_name(os, v, names);
    } else {
      os << "(* " << c << ' ';
      var_name(os, v, names);
      os << ')';
    }
  }
  if (e.constant != 0 || e.terms.empty()) {
    if (!first) os << ' ';
    os << e.constant;
  }
  if (parts > 1) os << ')';
}

void sexpr(std::ostringstream& os, const Formula& f, const std::vector<std::string>& names)
{
  switch (f.kind) {
    case Formula::Kind::True:
      os << "true";
      break;
    case Formula::Kind::False:
      os << "false";
      break;
    case Formula::Kind::Atom:
      os << '(' << (f.rel == Rel::Eq ? "=" : f.rel == Rel::Ne ? "distinct" : "<=") << ' ';
      sexpr_lin(os, f.expr, names);
      os << " 0)";
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      os << '(' << (f.kind == Formula::Kind::And ? "and" : "or");
      for (const auto& c : f.children) {
        os << ' ';
        sexpr(os, c, names);
      }
      os << ')';
      break;
  }
}

}  // namespace

std::string to_sexpr(const LinExpr& e, const std::vector<std::string>& names)
{
  std::ostringstream os;
  sexpr_lin(os, e, names);
  return os.str();
}

std::string to_sexpr(const Formula& f, const std::vector<std::string>& names)
{
  std::ostringstream os;
  sexpr(os, f, names);
  return os.str();
}

}  // namespace asrefine
