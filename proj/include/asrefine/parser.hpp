#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asrefine/ast.hpp"
#include "asrefine/diag.hpp"

namespace asrefine {

struct ParseResult
{
  std::optional<Model> model;  // engaged iff no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

// Parses and validates the Prolog-ish action-system concrete syntax
// (see docs/grammar.md). On success the model has all name/type/action
// references resolved and source locations on every node.
ParseResult parse_model(std::string_view text, std::string filename = "<input>");

// Convenience: reads the file, then parse_model. A missing/unreadable file
// yields a single parse_error diagnostic.
ParseResult parse_model_file(const std::string& path);

// Normal form: Choice may appear only as the body root or as a direct child
// of another Choice. Returns one diagnostic per violation, anchored at the
// offending non-Choice parent node; empty means the model is in normal form.
std::vector<Diagnostic> check_normal_form(const Model& m);

}  // namespace asrefine
