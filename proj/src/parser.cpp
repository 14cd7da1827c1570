#include "asrefine/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace asrefine {

std::string Diagnostic::format() const
{
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file) << ':' << loc.line << ':' << loc.col << ": "
     << (severity == Severity::Error ? "error" : "warning") << ": " << message;
  return os.str();
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags)
{
  std::string out;
  for (const auto& d : diags) {
    out += d.format();
    out += '\n';
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident,
  Keyword,  // type var state_def init as actions dood in true false
  Int,
  Atom,  // 'quoted'
  LParen,
  RParen,
  LBracket,
  RBracket,
  ChoiceOp,  // []
  Comma,
  Dot,
  DotDot,
  ColonDash,   // :-
  ColonColon,  // ::
  ColonEq,     // :=
  Colon,
  Arrow,  // =>
  Semi,
  CmpEq,  // #=
  CmpNe,  // #\=
  CmpLt,  // #<
  CmpLe,  // #=<
  CmpGt,  // #>
  CmpGe,  // #>=
  AndOp,  // "/\" or "#/\" (conjunction)
  OrOp,   // \/ or #\/
  NotOp,  // \+ or #\+
  Plus,
  Minus,
  Star,
  Eof,
};

const char* tok_name(Tok t)
{
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Keyword: return "keyword";
    case Tok::Int: return "integer";
    case Tok::Atom: return "quoted atom";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::ChoiceOp: return "'[]'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::ColonDash: return "':-'";
    case Tok::ColonColon: return "'::'";
    case Tok::ColonEq: return "':='";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'=>'";
    case Tok::Semi: return "';'";
    case Tok::CmpEq: return "'#='";
    case Tok::CmpNe: return "'#\\='";
    case Tok::CmpLt: return "'#<'";
    case Tok::CmpLe: return "'#=<'";
    case Tok::CmpGt: return "'#>'";
    case Tok::CmpGe: return "'#>='";
    case Tok::AndOp: return "'/\\'";
    case Tok::OrOp: return "'\\/'";
    case Tok::NotOp: return "'\\+'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token
{
  Tok kind = Tok::Eof;
  std::string text;
  int64_t value = 0;
  SourceLoc loc;
};

const std::unordered_set<std::string> kKeywords = {
    "type", "var", "state_def", "init", "as", "actions", "dood", "in", "true", "false"};

// Thrown on the first syntax error; the message is already a full diagnostic.
struct ParseAbort
{
  Diagnostic diag;
};

class Lexer
{
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run()
  {
    std::vector<Token> toks;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= text_.size()) {
        t.kind = Tok::Eof;
        toks.push_back(t);
        return toks;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = kKeywords.count(t.text) ? Tok::Keyword : Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
        t.kind = Tok::Int;
        t.text = std::string(text_.substr(start, pos_ - start));
        t.value = std::strtoll(t.text.c_str(), nullptr, 10);
      } else if (c == '\'') {
        advance();
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '\'' && text_[pos_] != '\n') advance();
        if (pos_ >= text_.size() || text_[pos_] != '\'')
          fail(t.loc, "unterminated quoted atom");
        t.kind = Tok::Atom;
        t.text = std::string(text_.substr(start, pos_ - start));
        advance();  // closing quote
      } else {
        t.kind = punct(t.loc);
      }
      toks.push_back(std::move(t));
    }
  }

 private:
  void advance()
  {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space()
  {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
        advance();
      if (pos_ < text_.size() && text_[pos_] == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  bool eat(char c)
  {
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(SourceLoc loc, const std::string& msg)
  {
    Diagnostic d;
    d.severity = Diagnostic::Severity::Error;
    d.code = "parse_error";
    d.message = msg;
    d.loc = loc;
    d.file = file_;
    throw ParseAbort{std::move(d)};
  }

  Tok punct(SourceLoc loc)
  {
    char c = text_[pos_];
    advance();
    switch (c) {
      case '(': return Tok::LParen;
      case ')': return Tok::RParen;
      case '[':
        if (eat(']')) return Tok::ChoiceOp;
        return Tok::LBracket;
      case ']': return Tok::RBracket;
      case ',': return Tok::Comma;
      case ';': return Tok::Semi;
      case '+': return Tok::Plus;
      case '-': return Tok::Minus;
      case '*': return Tok::Star;
      case '.':
        if (eat('.')) return Tok::DotDot;
        return Tok::Dot;
      case ':':
        if (eat('-')) return Tok::ColonDash;
        if (eat(':')) return Tok::ColonColon;
        if (eat('=')) return Tok::ColonEq;
        return Tok::Colon;
      case '=':
        if (eat('>')) return Tok::Arrow;
        fail(loc, "unexpected '='; comparisons use '#=' and friends");
      case '#':
        if (eat('=')) {
          if (eat('<')) return Tok::CmpLe;
          return Tok::CmpEq;
        }
        if (eat('<')) return Tok::CmpLt;
        if (eat('>')) {
          if (eat('=')) return Tok::CmpGe;
          return Tok::CmpGt;
        }
        if (eat('\\')) {
          if (eat('=')) return Tok::CmpNe;
          if (eat('/')) return Tok::OrOp;
          if (eat('+')) return Tok::NotOp;
          fail(loc, "unexpected '#\\'");
        }
        if (eat('/')) {
          if (eat('\\')) return Tok::AndOp;
          fail(loc, "unexpected '#/'");
        }
        fail(loc, "unexpected '#'");
      case '/':
        if (eat('\\')) return Tok::AndOp;
        fail(loc, "unexpected '/'");
      case '\\':
        if (eat('/')) return Tok::OrOp;
        if (eat('+')) return Tok::NotOp;
        fail(loc, "unexpected '\\'");
      default:
        fail(loc, std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

// Raw var clause before state_def ordering is applied.
struct RawVarDecl
{
  std::string name;
  std::string type_name;
  SourceLoc loc;
};

struct RawModel
{
  std::vector<TypeDef> types;
  std::vector<RawVarDecl> var_decls;
  std::vector<std::pair<std::string, SourceLoc>> state_def;
  SourceLoc state_def_loc;
  bool have_state_def = false;
  std::vector<std::pair<int64_t, SourceLoc>> init;
  SourceLoc init_loc;
  bool have_init = false;
  std::vector<Action> actions;
  std::vector<DoodEntry> dood;
  bool have_as = false;
};

class Parser
{
 public:
  Parser(std::vector<Token> toks, std::string file) : toks_(std::move(toks)), file_(std::move(file))
  {
  }

  RawModel parse()
  {
    RawModel m;
    while (!at(Tok::Eof)) {
      if (at_keyword("as")) {
        parse_as_block(m);
        m.have_as = true;
        break;
      }
      parse_clause(m);
    }
    if (!m.have_as) fail("expected 'as :- actions(...), dood(...).' block");
    if (!at(Tok::Eof)) fail("expected end of input after the as block");
    return m;
  }

 private:
  const Token& cur() const { return toks_[idx_]; }
  const Token& peek(size_t n = 1) const
  {
    size_t i = idx_ + n;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_keyword(const char* kw) const { return at(Tok::Keyword) && cur().text == kw; }

  Token take()
  {
    Token t = cur();
    if (!at(Tok::Eof)) ++idx_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const
  {
    Diagnostic d;
    d.severity = Diagnostic::Severity::Error;
    d.code = "parse_error";
    d.message = msg;
    d.loc = cur().loc;
    d.file = file_;
    throw ParseAbort{d};
  }

  Token expect(Tok k, const char* what = nullptr)
  {
    if (!at(k)) {
      std::string msg = "expected ";
      msg += what ? what : tok_name(k);
      msg += ", got ";
      msg += tok_name(cur().kind);
      if (cur().kind == Tok::Ident || cur().kind == Tok::Keyword || cur().kind == Tok::Atom)
        msg += " '" + cur().text + "'";
      fail(msg);
    }
    return take();
  }

  Token expect_keyword(const char* kw)
  {
    if (!at_keyword(kw)) fail(std::string("expected '") + kw + "', got " + tok_name(cur().kind));
    return take();
  }

  std::string expect_ident(const char* what)
  {
    if (!at(Tok::Ident)) {
      std::string msg = std::string("expected ") + what + ", got " + tok_name(cur().kind);
      if (at(Tok::Keyword)) msg += " '" + cur().text + "' (reserved word)";
      fail(msg);
    }
    return take().text;
  }

  int64_t expect_int_lit()
  {
    bool neg = false;
    if (at(Tok::Minus)) {
      take();
      neg = true;
    }
    Token t = expect(Tok::Int);
    return neg ? -t.value : t.value;
  }

  // 'atom' or bare identifier, used for action labels.
  std::string expect_label()
  {
    if (at(Tok::Atom) || at(Tok::Ident)) return take().text;
    fail(std::string("expected action label, got ") + tok_name(cur().kind));
  }

  void parse_clause(RawModel& m)
  {
    if (at_keyword("type")) {
      parse_type_clause(m);
    } else if (at_keyword("var")) {
      parse_var_clause(m);
    } else if (at_keyword("state_def")) {
      parse_state_def(m);
    } else if (at_keyword("init")) {
      parse_init(m);
    } else {
      fail("expected 'type', 'var', 'state_def', 'init' or 'as' clause");
    }
  }

  void parse_type_clause(RawModel& m)
  {
    TypeDef t;
    t.loc = cur().loc;
    expect_keyword("type");
    expect(Tok::LParen);
    t.name = expect_ident("type name");
    expect(Tok::Comma);
    std::string placeholder = expect_ident("domain placeholder");
    expect(Tok::RParen);
    expect(Tok::ColonDash);
    std::string placeholder2 = expect_ident("domain placeholder");
    if (placeholder2 != placeholder)
      fail("domain placeholder '" + placeholder2 + "' does not match '" + placeholder + "'");
    expect_keyword("in");
    t.lo = expect_int_lit();
    expect(Tok::DotDot);
    t.hi = expect_int_lit();
    expect(Tok::Dot);
    m.types.push_back(std::move(t));
  }

  void parse_var_clause(RawModel& m)
  {
    expect_keyword("var");
    expect(Tok::LParen);
    expect(Tok::LBracket);
    std::vector<std::pair<std::string, SourceLoc>> names;
    for (;;) {
      SourceLoc loc = cur().loc;
      names.emplace_back(expect_ident("variable name"), loc);
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::RBracket);
    expect(Tok::Comma);
    std::string type_name = expect_ident("type name");
    expect(Tok::RParen);
    expect(Tok::Dot);
    for (auto& [name, loc] : names) m.var_decls.push_back({name, type_name, loc});
  }

  void parse_state_def(RawModel& m)
  {
    m.state_def_loc = cur().loc;
    expect_keyword("state_def");
    expect(Tok::LParen);
    expect(Tok::LBracket);
    for (;;) {
      SourceLoc loc = cur().loc;
      m.state_def.emplace_back(expect_ident("variable name"), loc);
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::RBracket);
    expect(Tok::RParen);
    expect(Tok::Dot);
    m.have_state_def = true;
  }

  void parse_init(RawModel& m)
  {
    m.init_loc = cur().loc;
    expect_keyword("init");
    expect(Tok::LParen);
    expect(Tok::LBracket);
    for (;;) {
      SourceLoc loc = cur().loc;
      m.init.emplace_back(expect_int_lit(), loc);
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::RBracket);
    expect(Tok::RParen);
    expect(Tok::Dot);
    m.have_init = true;
  }

  void parse_as_block(RawModel& m)
  {
    expect_keyword("as");
    expect(Tok::ColonDash);
    expect_keyword("actions");
    expect(Tok::LParen);
    for (;;) {
      m.actions.push_back(parse_action());
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::RParen);
    expect(Tok::Comma);
    expect_keyword("dood");
    expect(Tok::LParen);
    for (;;) {
      m.dood.push_back(parse_dood_entry());
      if (at(Tok::ChoiceOp)) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::RParen);
    expect(Tok::Dot);
  }

  Action parse_action()
  {
    Action a;
    a.loc = cur().loc;
    a.label = expect_label();
    if (at(Tok::LParen)) {
      take();
      for (;;) {
        Param p;
        p.loc = cur().loc;
        p.name = expect_ident("parameter name");
        a.params.push_back(std::move(p));
        if (at(Tok::Comma)) {
          take();
          continue;
        }
        break;
      }
      expect(Tok::RParen);
    }
    expect(Tok::ColonColon);
    a.guard = parse_guard();
    expect(Tok::Arrow);
    a.body = parse_body();
    return a;
  }

  DoodEntry parse_dood_entry()
  {
    DoodEntry d;
    d.loc = cur().loc;
    if (at(Tok::LBracket)) {
      take();
      for (;;) {
        DoodEntry::Binding b;
        b.loc = cur().loc;
        b.param_name = expect_ident("parameter name");
        expect(Tok::Colon);
        b.type_name = expect_ident("type name");
        d.bindings.push_back(std::move(b));
        if (at(Tok::Comma)) {
          take();
          continue;
        }
        break;
      }
      expect(Tok::RBracket);
      expect(Tok::Colon);
    }
    d.label = expect_label();
    if (at(Tok::LParen)) {
      take();
      std::vector<std::string> args;
      for (;;) {
        args.push_back(expect_ident("parameter name"));
        if (at(Tok::Comma)) {
          take();
          continue;
        }
        break;
      }
      expect(Tok::RParen);
      if (args.size() != d.bindings.size())
        fail("do-od entry applies " + std::to_string(args.size()) + " argument(s) but binds " +
             std::to_string(d.bindings.size()));
      for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] != d.bindings[i].param_name)
          fail("do-od argument '" + args[i] + "' does not match bound parameter '" +
               d.bindings[i].param_name + "'");
      }
    } else if (!d.bindings.empty()) {
      fail("do-od entry binds parameters but applies none");
    }
    return d;
  }

  // --- guards ---------------------------------------------------------------

  std::unique_ptr<Guard> parse_guard()
  {
    auto g = parse_guard_and();
    while (at(Tok::OrOp)) {
      SourceLoc loc = take().loc;
      g = mk_or(std::move(g), parse_guard_and(), loc);
    }
    return g;
  }

  std::unique_ptr<Guard> parse_guard_and()
  {
    auto g = parse_guard_not();
    while (at(Tok::AndOp)) {
      SourceLoc loc = take().loc;
      g = mk_and(std::move(g), parse_guard_not(), loc);
    }
    return g;
  }

  std::unique_ptr<Guard> parse_guard_not()
  {
    if (at(Tok::NotOp)) {
      SourceLoc loc = take().loc;
      return mk_not(parse_guard_not(), loc);
    }
    return parse_guard_prim();
  }

  static std::optional<CmpOp> cmp_of(Tok k)
  {
    switch (k) {
      case Tok::CmpEq: return CmpOp::Eq;
      case Tok::CmpNe: return CmpOp::Ne;
      case Tok::CmpLt: return CmpOp::Lt;
      case Tok::CmpLe: return CmpOp::Le;
      case Tok::CmpGt: return CmpOp::Gt;
      case Tok::CmpGe: return CmpOp::Ge;
      default: return std::nullopt;
    }
  }

  std::unique_ptr<Guard> parse_guard_prim()
  {
    if (at_keyword("true") || at_keyword("false")) {
      Token t = take();
      return mk_lit(t.text == "true", t.loc);
    }
    // Try a comparison first; '(' may open either an arithmetic or a boolean
    // parenthesis, so backtrack if no comparison operator follows.
    size_t snap = idx_;
    try {
      auto lhs = parse_expr();
      if (auto op = cmp_of(cur().kind)) {
        SourceLoc loc = take().loc;
        auto rhs = parse_expr();
        return mk_cmp(*op, std::move(lhs), std::move(rhs), loc);
      }
    } catch (const ParseAbort&) {
      // fall through to boolean parenthesis
    }
    idx_ = snap;
    if (at(Tok::LParen)) {
      take();
      auto g = parse_guard();
      expect(Tok::RParen);
      return g;
    }
    fail("expected guard (comparison, 'true', 'false', '\\+' or '(')");
  }

  // --- bodies ---------------------------------------------------------------

  std::unique_ptr<Body> parse_body()
  {
    auto b = parse_seq();
    while (at(Tok::ChoiceOp)) {
      SourceLoc loc = take().loc;
      b = mk_choice(std::move(b), parse_seq(), loc);
    }
    return b;
  }

  std::unique_ptr<Body> parse_seq()
  {
    auto b = parse_unit();
    while (at(Tok::Semi)) {
      SourceLoc loc = take().loc;
      b = mk_seq(std::move(b), parse_unit(), loc);
    }
    return b;
  }

  std::unique_ptr<Body> parse_unit()
  {
    if (at(Tok::Ident) && peek().kind == Tok::ColonEq) {
      SourceLoc loc = cur().loc;
      std::string target = take().text;
      take();  // :=
      auto value = parse_expr();
      return mk_assign(std::move(target), std::move(value), loc);
    }
    // Guarded command: a guard followed by '=>'. Backtrack if the tokens turn
    // out to be a parenthesized body instead.
    size_t snap = idx_;
    try {
      SourceLoc loc = cur().loc;
      auto g = parse_guard();
      if (at(Tok::Arrow)) {
        take();
        auto inner = parse_unit();
        return mk_guarded(std::move(g), std::move(inner), loc);
      }
    } catch (const ParseAbort&) {
      // fall through
    }
    idx_ = snap;
    if (at(Tok::LParen)) {
      take();
      auto b = parse_body();
      expect(Tok::RParen);
      return b;
    }
    fail("expected assignment, guarded command, or '('");
  }

  // --- expressions ----------------------------------------------------------

  std::unique_ptr<Expr> parse_expr()
  {
    auto e = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      AriOp op = at(Tok::Plus) ? AriOp::Add : AriOp::Sub;
      SourceLoc loc = take().loc;
      e = mk_bin(op, std::move(e), parse_term(), loc);
    }
    return e;
  }

  std::unique_ptr<Expr> parse_term()
  {
    auto e = parse_factor();
    while (at(Tok::Star)) {
      SourceLoc loc = take().loc;
      e = mk_bin(AriOp::Mul, std::move(e), parse_factor(), loc);
    }
    return e;
  }

  std::unique_ptr<Expr> parse_factor()
  {
    if (at(Tok::Int)) {
      Token t = take();
      return mk_const(t.value, t.loc);
    }
    if (at(Tok::Minus) && peek().kind == Tok::Int) {
      SourceLoc loc = take().loc;
      Token t = take();
      return mk_const(-t.value, loc);
    }
    if (at(Tok::Ident)) {
      Token t = take();
      return mk_var(t.text, t.loc);
    }
    if (at(Tok::LParen)) {
      take();
      auto e = parse_expr();
      expect(Tok::RParen);
      return e;
    }
    fail("expected expression (integer, variable, or '(')");
  }

  std::vector<Token> toks_;
  std::string file_;
  size_t idx_ = 0;
};

// ---------------------------------------------------------------------------
// Validation

class Validator
{
 public:
  Validator(RawModel raw, std::string file) : raw_(std::move(raw)), file_(std::move(file)) {}

  ParseResult run()
  {
    check_types();
    check_vars();
    check_init();
    check_actions();
    check_dood();
    ParseResult res;
    res.diagnostics = std::move(diags_);
    if (!has_errors(res.diagnostics)) res.model = std::move(model_);
    return res;
  }

 private:
  void error(std::string code, std::string msg, SourceLoc loc)
  {
    Diagnostic d;
    d.severity = Diagnostic::Severity::Error;
    d.code = std::move(code);
    d.message = std::move(msg);
    d.loc = loc;
    d.file = file_;
    diags_.push_back(std::move(d));
  }

  void check_types()
  {
    for (auto& t : raw_.types) {
      if (model_.type_index(t.name) >= 0) {
        error("duplicate_name", "duplicate type '" + t.name + "'", t.loc);
        continue;
      }
      if (t.lo > t.hi)
        error("type_range",
              "type '" + t.name + "' has empty range " + std::to_string(t.lo) + ".." +
                  std::to_string(t.hi),
              t.loc);
      model_.types.push_back(t);
    }
  }

  void check_vars()
  {
    std::map<std::string, RawVarDecl*> declared;
    for (auto& d : raw_.var_decls) {
      if (declared.count(d.name)) {
        error("duplicate_name", "duplicate variable '" + d.name + "'", d.loc);
        continue;
      }
      declared[d.name] = &d;
      if (model_.type_index(d.type_name) < 0)
        error("undeclared_type", "variable '" + d.name + "' has unknown type '" + d.type_name + "'",
              d.loc);
    }
    if (!raw_.have_state_def) {
      error("parse_error", "missing state_def clause", {1, 1});
      return;
    }
    std::set<std::string> seen;
    for (auto& [name, loc] : raw_.state_def) {
      if (!seen.insert(name).second) {
        error("duplicate_name", "variable '" + name + "' listed twice in state_def", loc);
        continue;
      }
      auto it = declared.find(name);
      if (it == declared.end()) {
        error("undeclared_variable", "state_def entry '" + name + "' is not a declared variable",
              loc);
        continue;
      }
      VarDecl v;
      v.name = name;
      v.type_name = it->second->type_name;
      v.type_index = model_.type_index(v.type_name);
      v.loc = it->second->loc;
      model_.vars.push_back(std::move(v));
    }
  }

  void check_init()
  {
    if (!raw_.have_init) {
      error("parse_error", "missing init clause", {1, 1});
      return;
    }
    if (raw_.init.size() != model_.vars.size()) {
      error("arity_mismatch",
            "init vector has " + std::to_string(raw_.init.size()) + " value(s) but state_def has " +
                std::to_string(model_.vars.size()),
            raw_.init_loc);
      return;
    }
    for (size_t i = 0; i < raw_.init.size(); ++i) {
      auto [v, loc] = raw_.init[i];
      model_.init.push_back(v);
      if (model_.vars[i].type_index < 0) continue;  // type error already reported
      const TypeDef& t = model_.types[model_.vars[i].type_index];
      if (v < t.lo || v > t.hi)
        error("init_out_of_bounds",
              "init value " + std::to_string(v) + " for '" + model_.vars[i].name +
                  "' is outside " + t.name + " = " + std::to_string(t.lo) + ".." +
                  std::to_string(t.hi),
              loc);
    }
  }

  // Name resolution inside one action's scope.
  void check_expr(const Expr& e, const Action& a)
  {
    switch (e.kind) {
      case Expr::Kind::Var: {
        if (model_.var_index(e.var) >= 0) return;
        for (const auto& p : a.params)
          if (p.name == e.var) return;
        error("undeclared_variable",
              "'" + e.var + "' is neither a state variable nor a parameter of '" + a.label + "'",
              e.loc);
        break;
      }
      case Expr::Kind::Const:
        break;
      case Expr::Kind::Bin:
        check_expr(*e.lhs, a);
        check_expr(*e.rhs, a);
        break;
    }
  }

  void check_guard(const Guard& g, const Action& a)
  {
    switch (g.kind) {
      case Guard::Kind::Lit:
        break;
      case Guard::Kind::Cmp:
        check_expr(*g.lhs, a);
        check_expr(*g.rhs, a);
        break;
      case Guard::Kind::And:
      case Guard::Kind::Or:
        check_guard(*g.a, a);
        check_guard(*g.b, a);
        break;
      case Guard::Kind::Not:
        check_guard(*g.a, a);
        break;
    }
  }

  void check_body(const Body& b, const Action& a)
  {
    switch (b.kind) {
      case Body::Kind::Assign: {
        if (model_.var_index(b.target) < 0) {
          bool is_param = false;
          for (const auto& p : a.params)
            if (p.name == b.target) is_param = true;
          if (is_param)
            error("undeclared_variable",
                  "cannot assign to parameter '" + b.target + "' of '" + a.label + "'", b.loc);
          else
            error("undeclared_variable",
                  "assignment target '" + b.target + "' is not a state variable", b.loc);
        }
        check_expr(*b.value, a);
        break;
      }
      case Body::Kind::Guarded:
        check_guard(*b.guard, a);
        check_body(*b.first, a);
        break;
      case Body::Kind::Seq:
      case Body::Kind::Choice:
        check_body(*b.first, a);
        check_body(*b.second, a);
        break;
    }
  }

  void check_actions()
  {
    for (auto& a : raw_.actions) {
      if (model_.action_index(a.label) >= 0) {
        error("duplicate_name", "duplicate action '" + a.label + "'", a.loc);
        continue;
      }
      std::set<std::string> pnames;
      for (auto& p : a.params) {
        if (!pnames.insert(p.name).second)
          error("duplicate_name", "duplicate parameter '" + p.name + "' in '" + a.label + "'",
                p.loc);
        if (model_.var_index(p.name) >= 0)
          error("duplicate_name",
                "parameter '" + p.name + "' of '" + a.label + "' shadows a state variable", p.loc);
      }
      check_guard(*a.guard, a);
      check_body(*a.body, a);
      model_.actions.push_back(std::move(a));
    }
  }

  void check_dood()
  {
    for (auto& d : raw_.dood) {
      int ai = model_.action_index(d.label);
      if (ai < 0) {
        error("undefined_action", "do-od entry names unknown action '" + d.label + "'", d.loc);
        continue;
      }
      Action& act = model_.actions[ai];
      if (d.bindings.size() != act.params.size()) {
        error("arity_mismatch",
              "do-od entry for '" + d.label + "' binds " + std::to_string(d.bindings.size()) +
                  " parameter(s) but the action takes " + std::to_string(act.params.size()),
              d.loc);
        continue;
      }
      bool ok = true;
      for (auto& b : d.bindings) {
        b.type_index = model_.type_index(b.type_name);
        if (b.type_index < 0) {
          error("undeclared_type",
                "do-od binding '" + b.param_name + ":" + b.type_name + "' has unknown type", b.loc);
          ok = false;
        }
      }
      if (!ok) continue;
      d.action_index = ai;
      // First do-od entry for an action fixes its parameter types.
      for (size_t i = 0; i < d.bindings.size(); ++i) {
        if (act.params[i].type_index < 0) {
          act.params[i].type_index = d.bindings[i].type_index;
          act.params[i].type_name = d.bindings[i].type_name;
        }
      }
      model_.dood.push_back(std::move(d));
    }
    // Parameters of actions never referenced by do-od fall back to the widest
    // declared type, so mutation and the explicit interpreter still have a
    // domain to work with.
    int widest = model_.widest_type_index();
    for (auto& a : model_.actions) {
      for (auto& p : a.params) {
        if (p.type_index < 0 && widest >= 0) {
          p.type_index = widest;
          p.type_name = model_.types[widest].name;
        }
      }
    }
  }

  RawModel raw_;
  std::string file_;
  Model model_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

ParseResult parse_model(std::string_view text, std::string filename)
{
  try {
    Lexer lex(text, filename);
    Parser p(lex.run(), filename);
    RawModel raw = p.parse();
    return Validator(std::move(raw), filename).run();
  } catch (const ParseAbort& abort) {
    ParseResult res;
    res.diagnostics.push_back(abort.diag);
    return res;
  }
}

ParseResult parse_model_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult res;
    Diagnostic d;
    d.severity = Diagnostic::Severity::Error;
    d.code = "parse_error";
    d.message = "cannot open file";
    d.loc = {0, 0};
    d.file = path;
    res.diagnostics.push_back(std::move(d));
    return res;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

const char* body_kind_name(Body::Kind k)
{
  switch (k) {
    case Body::Kind::Assign: return "assignment";
    case Body::Kind::Guarded: return "guarded command";
    case Body::Kind::Seq: return "sequential composition";
    case Body::Kind::Choice: return "choice";
  }
  return "?";
}

// Flags every Choice whose direct parent is not itself a Choice (the body
// root does not count as a violation). The diagnostic is anchored at the
// offending parent so the user sees which operator hides the choice.
void walk_normal_form(const Body& b, const std::string& label, std::vector<Diagnostic>& out)
{
  auto check_child = [&](const Body& child) {
    if (child.kind == Body::Kind::Choice && b.kind != Body::Kind::Choice) {
      Diagnostic d;
      d.severity = Diagnostic::Severity::Error;
      d.code = "normal_form";
      d.message = "in action '" + label + "': choice nested under " + body_kind_name(b.kind) +
                  "; choice may appear only at the body root or under another choice";
      d.loc = b.loc;
      out.push_back(std::move(d));
    }
    walk_normal_form(child, label, out);
  };
  switch (b.kind) {
    case Body::Kind::Assign:
      break;
    case Body::Kind::Guarded:
      check_child(*b.first);
      break;
    case Body::Kind::Seq:
    case Body::Kind::Choice:
      check_child(*b.first);
      check_child(*b.second);
      break;
  }
}

}  // namespace

std::vector<Diagnostic> check_normal_form(const Model& m)
{
  std::vector<Diagnostic> out;
  for (const auto& a : m.actions) walk_normal_form(*a.body, a.label, out);
  return out;
}

}  // namespace asrefine
