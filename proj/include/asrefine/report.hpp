#pragma once

#include <string>

#include "asrefine/driver.hpp"

namespace asrefine {

enum class ReportFormat { Json, Csv, Text };

// Serialized batch/check report. JSON carries everything (schema_version 1,
// see docs/report-schema.md); CSV flattens one row per mutant; text is a
// human-readable summary.
std::string render_report(const BatchResult& res, const BatchOptions& opts, ReportFormat fmt);

// Report for a single original/mutant pair (asrefine check).
struct CheckReportInput
{
  std::string original_file;
  std::string mutant_file;
  EngineSel engine = EngineSel::Symbolic;
  CheckOptions opts;
  std::optional<EngineOutcome> symbolic;
  std::optional<EngineOutcome> explicit_outcome;
  bool agree = true;
};

std::string render_check_report(const CheckReportInput& in, ReportFormat fmt);

// Manifest for a generated mutant set (asrefine mutate): ids, operators,
// locations and the model files they were written to.
std::string mutant_manifest_json(const std::string& source_file,
                                 const std::vector<Mutant>& mutants,
                                 const std::vector<std::string>& files);

}  // namespace asrefine
