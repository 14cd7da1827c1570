#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

// Abstract syntax for guarded-command action systems: integer expressions,
// boolean guards over finite-domain comparisons, bodies built from assignment,
// guarded command, sequential composition and non-deterministic choice, plus
// the surrounding model structure (types, variables, init, do-od loop).
namespace asrefine {

struct SourceLoc
{
  int line = 0;  // 1-based; 0 = synthesized node
  int col = 0;
};

// Stable node address used by the mutation engine: child indices from the
// model root. First index selects the section (types / vars / actions / dood),
// second the element; the rest walk the element's tree. See node_path.cpp for
// the per-node child numbering.
using NodePath = std::vector<uint32_t>;

inline constexpr uint32_t kSectionTypes = 0;
inline constexpr uint32_t kSectionVars = 1;
inline constexpr uint32_t kSectionActions = 2;
inline constexpr uint32_t kSectionDood = 3;

struct TypeDef
{
  std::string name;
  int64_t lo = 0;
  int64_t hi = 0;
  SourceLoc loc;
};

struct VarDecl
{
  std::string name;
  std::string type_name;
  int type_index = -1;  // into Model::types, resolved during validation
  SourceLoc loc;
};

// ---------------------------------------------------------------------------
// Integer expressions

enum class AriOp { Add, Sub, Mul };

struct Expr
{
  enum class Kind { Var, Const, Bin };

  Kind kind = Kind::Const;
  std::string var;          // Kind::Var — state variable or action parameter
  int64_t value = 0;        // Kind::Const
  AriOp op = AriOp::Add;    // Kind::Bin
  std::unique_ptr<Expr> lhs, rhs;
  SourceLoc loc;

  std::unique_ptr<Expr> clone() const;
};

std::unique_ptr<Expr> mk_var(std::string name, SourceLoc loc = {});
std::unique_ptr<Expr> mk_const(int64_t v, SourceLoc loc = {});
std::unique_ptr<Expr> mk_bin(AriOp op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r,
                             SourceLoc loc = {});

// ---------------------------------------------------------------------------
// Guards

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* cmp_op_token(CmpOp op);  // "#=", "#\\=", ...

struct Guard
{
  enum class Kind { Lit, Cmp, And, Or, Not };

  Kind kind = Kind::Lit;
  bool lit_value = false;             // Kind::Lit
  CmpOp op = CmpOp::Eq;               // Kind::Cmp
  std::unique_ptr<Expr> lhs, rhs;     // Kind::Cmp
  std::unique_ptr<Guard> a, b;        // And/Or use both, Not uses a
  SourceLoc loc;

  std::unique_ptr<Guard> clone() const;
  bool is_literal_true() const { return kind == Kind::Lit && lit_value; }
};

std::unique_ptr<Guard> mk_lit(bool v, SourceLoc loc = {});
std::unique_ptr<Guard> mk_cmp(CmpOp op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r,
                              SourceLoc loc = {});
std::unique_ptr<Guard> mk_and(std::unique_ptr<Guard> a, std::unique_ptr<Guard> b,
                              SourceLoc loc = {});
std::unique_ptr<Guard> mk_or(std::unique_ptr<Guard> a, std::unique_ptr<Guard> b,
                             SourceLoc loc = {});
std::unique_ptr<Guard> mk_not(std::unique_ptr<Guard> a, SourceLoc loc = {});

// ---------------------------------------------------------------------------
// Bodies

struct Body
{
  enum class Kind { Assign, Guarded, Seq, Choice };

  Kind kind = Kind::Assign;
  std::string target;                 // Assign
  std::unique_ptr<Expr> value;        // Assign
  std::unique_ptr<Guard> guard;       // Guarded
  std::unique_ptr<Body> first;        // Guarded body / Seq lhs / Choice lhs
  std::unique_ptr<Body> second;       // Seq rhs / Choice rhs
  SourceLoc loc;

  std::unique_ptr<Body> clone() const;
};

std::unique_ptr<Body> mk_assign(std::string target, std::unique_ptr<Expr> value,
                                SourceLoc loc = {});
std::unique_ptr<Body> mk_guarded(std::unique_ptr<Guard> g, std::unique_ptr<Body> b,
                                 SourceLoc loc = {});
std::unique_ptr<Body> mk_seq(std::unique_ptr<Body> a, std::unique_ptr<Body> b,
                             SourceLoc loc = {});
std::unique_ptr<Body> mk_choice(std::unique_ptr<Body> a, std::unique_ptr<Body> b,
                                SourceLoc loc = {});

// ---------------------------------------------------------------------------
// Actions and the do-od block

struct Param
{
  std::string name;
  std::string type_name;  // empty until resolved from the do-od binding
  int type_index = -1;
  SourceLoc loc;
};

struct Action
{
  std::string label;
  std::vector<Param> params;
  std::unique_ptr<Guard> guard;
  std::unique_ptr<Body> body;
  SourceLoc loc;

  Action clone() const;
};

// One alternative of the do-od loop: a label applied to freshly bound typed
// parameters, e.g.  [X:int]:'after'(X)  or just  'Lock'.
struct DoodEntry
{
  struct Binding
  {
    std::string param_name;
    std::string type_name;
    int type_index = -1;
    SourceLoc loc;
  };

  std::string label;
  std::vector<Binding> bindings;
  int action_index = -1;  // into Model::actions, resolved during validation
  SourceLoc loc;

  DoodEntry clone() const;
};

struct Model
{
  std::vector<TypeDef> types;
  std::vector<VarDecl> vars;       // order = state_def order
  std::vector<int64_t> init;       // aligned with vars
  std::vector<Action> actions;
  std::vector<DoodEntry> dood;

  Model clone() const;

  int type_index(const std::string& name) const;   // -1 if absent
  int var_index(const std::string& name) const;    // -1 if absent
  int action_index(const std::string& label) const;
  const TypeDef& var_type(int var_idx) const { return types[vars[var_idx].type_index]; }
  // Widest declared type (largest hi-lo span, first declared wins ties).
  int widest_type_index() const;
};

// ---------------------------------------------------------------------------
// Node paths (mutation-site addressing)
//
// Child numbering: Action {0: guard, 1: body}; Guard::Cmp {0: lhs, 1: rhs};
// Guard::And/Or {0: a, 1: b}; Guard::Not {0: a}; Body::Assign {0: value};
// Body::Guarded {0: guard, 1: first}; Body::Seq/Choice {0: first, 1: second};
// Expr::Bin {0: lhs, 1: rhs}.

struct NodeRef
{
  enum class Kind { None, Type, Var, Action, DoodEntry, Guard, Body, Expr };
  Kind kind = Kind::None;
  TypeDef* type = nullptr;
  VarDecl* var = nullptr;
  Action* action = nullptr;
  DoodEntry* dood = nullptr;
  Guard* guard = nullptr;
  Body* body = nullptr;
  Expr* expr = nullptr;
};

// Resolves a path against a model; Kind::None if the path does not address a node.
NodeRef resolve_path(Model& m, const NodePath& path);

std::string path_to_string(const NodePath& path);  // "2.1.1.0" style

// ---------------------------------------------------------------------------
// Pretty printing (canonical concrete syntax; reparses to an identical tree)

std::string pretty_print(const Model& m);
std::string pretty_print(const Expr& e);
std::string pretty_print(const Guard& g);
std::string pretty_print(const Body& b);
std::string pretty_print(const Action& a);

// Structural equality ignoring source locations.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Guard& a, const Guard& b);
bool structurally_equal(const Body& a, const Body& b);
bool structurally_equal(const Model& a, const Model& b);

}  // namespace asrefine
