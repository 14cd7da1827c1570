#pragma once

#include <string>
#include <vector>

#include "asrefine/ast.hpp"

namespace asrefine {

// Stable machine-readable codes; messages are for humans, tests key on codes.
// parse_error         malformed input (aborts the parse)
// duplicate_name      redeclared type/variable/action/parameter
// undeclared_type     reference to an unknown type
// undeclared_variable reference to a name that is neither a state variable nor a parameter
// undefined_action    do-od entry names an action that does not exist
// arity_mismatch      parameter/argument count disagreement (also init length)
// init_out_of_bounds  init value outside its variable's type range
// type_range          type declared with lo > hi
// normal_form         choice nested under a non-choice body node
struct Diagnostic
{
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceLoc loc;
  std::string file;

  // "file:line:col: error: message"
  std::string format() const;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diags);

inline bool has_errors(const std::vector<Diagnostic>& diags)
{
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

}  // namespace asrefine
