#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "asrefine/ast.hpp"

namespace asrefine {

enum class MutantOp { GuardTrue, CompOpInvert, IntConstIncrement };

// CLI-facing operator names: guard_true, comp_invert, int_inc.
const char* to_string(MutantOp op);
std::optional<MutantOp> mutant_op_from_string(std::string_view s);

struct MutationOps
{
  bool guard_true = true;
  bool comp_invert = true;
  bool int_inc = true;

  bool enabled(MutantOp op) const
  {
    switch (op) {
      case MutantOp::GuardTrue: return guard_true;
      case MutantOp::CompOpInvert: return comp_invert;
      case MutantOp::IntConstIncrement: return int_inc;
    }
    return false;
  }
};

struct MutantSpec
{
  MutantOp op = MutantOp::GuardTrue;
  NodePath location;
  std::string action_label;        // enclosing action, for reporting
  std::string original;            // replaced text (token or guard)
  std::string replacement;
  int64_t replacement_value = 0;   // IntConstIncrement only
  SourceLoc loc;
};

struct Mutant
{
  MutantSpec spec;
  Model model;
};

struct MutationError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// All applicable sites in a fixed deterministic order: operators in enum
// order (guard_true, comp_invert, int_inc), sites in document order within
// each operator (actions in definition order; within an action the guard
// first, then the body in pre-order).
//
//   guard_true   every action guard and every nested guarded-command guard
//                that is not already the literal `true`
//   comp_invert  every `#=` <-> `#\=` comparison atom
//   int_inc      every integer constant c, replaced by c+1, wrapping to the
//                relevant domain's lower bound when c equals its upper bound.
//                The relevant domain is the assigned variable's type (assign
//                RHS), the type of the plain variable on the other side of a
//                comparison, or the widest declared type otherwise.
std::vector<MutantSpec> enumerate_mutation_sites(const Model& m, const MutationOps& ops = {});

// First-order mutant: a deep copy of `m` with the one change applied. The
// location must be a site enumerate_mutation_sites would produce for the
// spec's operator; anything else throws MutationError.
Model apply_mutation(const Model& m, const MutantSpec& spec);

std::vector<Mutant> enumerate_mutants(const Model& m, const MutationOps& ops = {});

}  // namespace asrefine
