// asrefine: refinement checking and mutation analysis for action systems.
//
// Subcommands:
//   parse    parse + validate a model, print diagnostics
//   fixture  emit a car-alarm benchmark model (cas_1, cas_10, ...)
//   mutate   write every first-order mutant of a model plus a manifest
//   check    check one original/mutant pair for refinement
//   batch    check a model against all of its own mutants
//
// Exit codes: 0 the mutant conforms (or the command succeeded), 1 a
// non-conformance was found, 2 the analysis was inconclusive (resource
// limits), 3 the input failed to parse or validate, >3 CLI usage errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asrefine/diag.hpp"
#include "asrefine/driver.hpp"
#include "asrefine/fixtures.hpp"
#include "asrefine/mutation.hpp"
#include "asrefine/parser.hpp"
#include "asrefine/refinement.hpp"
#include "asrefine/report.hpp"
#include "asrefine/semantics.hpp"

namespace {

using namespace asrefine;

constexpr int kExitConforming = 0;
constexpr int kExitNonConforming = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitBadInput = 3;

// Parses, validates and normal-form-checks one model file. Diagnostics go to
// stderr; returns nullopt if any are errors.
std::optional<Model> load_model(const std::string& path)
{
  ParseResult r = parse_model_file(path);
  if (!r.diagnostics.empty()) std::cerr << format_diagnostics(r.diagnostics);
  if (!r.ok()) return std::nullopt;
  auto nf = check_normal_form(*r.model);
  if (!nf.empty()) {
    std::cerr << format_diagnostics(nf);
    return std::nullopt;
  }
  return std::move(r.model);
}

bool parse_ops(const std::string& csv, MutationOps& out, std::string& err)
{
  if (csv.empty()) return true;  // default: all operators
  out = MutationOps{false, false, false};
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto op = mutant_op_from_string(item);
    if (!op) {
      err = "unknown mutation operator '" + item +
            "' (expected guard_true, comp_invert or int_inc)";
      return false;
    }
    switch (*op) {
      case MutantOp::GuardTrue: out.guard_true = true; break;
      case MutantOp::CompOpInvert: out.comp_invert = true; break;
      case MutantOp::IntConstIncrement: out.int_inc = true; break;
    }
  }
  return true;
}

bool write_output(const std::string& path, const std::string& content)
{
  if (path.empty()) {
    std::cout << content;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int verdict_exit(ReportVerdict v)
{
  switch (v) {
    case ReportVerdict::NonConforming: return kExitNonConforming;
    case ReportVerdict::EquivProved:
    case ReportVerdict::EquivBounded: return kExitConforming;
    case ReportVerdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

// Prints the translated step formulas for a check to stderr, so stdout stays
// reserved for the report.
void dump_check_formulas(const Model& orig, const Model& mut, const StepVarSpace& space)
{
  std::cerr << "; step variables: " << space.num_vars() << "\n";
  for (int v = 0; v < space.num_vars(); ++v) {
    std::cerr << ";   " << space.names[v] << " in " << space.domains[v].lo << ".."
              << space.domains[v].hi << "\n";
  }
  std::cerr << "; original system\n" << to_sexpr(translate_system(orig, space), space.names)
            << "\n";
  std::cerr << "; mutant system\n" << to_sexpr(translate_system(mut, space), space.names) << "\n";
  std::set<int> seen;
  for (const auto& entry : mut.dood) {
    if (!seen.insert(entry.action_index).second) continue;
    auto c = build_nonrefinement_constraint(orig, mut, entry.action_index, space);
    std::cerr << "; non-refinement constraint for '" << c.label << "'\n"
              << to_sexpr(c.formula, space.names) << "\n";
  }
}

struct BudgetFlags
{
  int max_depth = 20;
  double timeout_s = 10.0;
  uint64_t node_budget = 1'000'000;
  uint64_t candidate_budget = 1'000'000;

  void attach(CLI::App* cmd)
  {
    cmd->add_option("--max-depth", max_depth, "breadth-first search depth bound")
        ->capture_default_str();
    cmd->add_option("--timeout", timeout_s,
                    "seconds per solver call (symbolic) / per check (explicit)")
        ->capture_default_str();
    cmd->add_option("--node-budget", node_budget, "search nodes per solver call")
        ->capture_default_str();
    cmd->add_option("--candidate-budget", candidate_budget,
                    "parameter tuples per explicit-engine check")
        ->capture_default_str();
  }

  CheckOptions to_options() const
  {
    CheckOptions o;
    o.max_depth = max_depth;
    o.solver_budget.max_nodes = node_budget;
    o.solver_budget.timeout_s = timeout_s;
    o.explicit_limits.max_candidates = candidate_budget;
    o.explicit_limits.timeout_s = timeout_s;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"refinement checker and mutation analyser for action systems"};
  app.require_subcommand(1);

  std::map<std::string, EngineSel> engine_map{{"symbolic", EngineSel::Symbolic},
                                              {"explicit", EngineSel::Explicit},
                                              {"both", EngineSel::Both}};
  std::map<std::string, ReportFormat> format_map{{"json", ReportFormat::Json},
                                                 {"csv", ReportFormat::Csv},
                                                 {"text", ReportFormat::Text}};

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse and validate a model");
  std::string parse_file;
  bool parse_dump = false;
  cmd_parse->add_option("model", parse_file, "model file (.as)")->required();
  cmd_parse->add_flag("--dump-formulas", parse_dump, "print the translated step formulas");

  // fixture
  auto* cmd_fixture = app.add_subcommand("fixture", "emit a car-alarm benchmark model");
  std::string fixture_name = "cas_1";
  std::string fixture_out;
  int64_t fixture_int_hi = -1;
  cmd_fixture->add_option("name", fixture_name, "cas_<scale>, e.g. cas_1, cas_10, cas_1000")
      ->required();
  cmd_fixture->add_option("-o,--output", fixture_out, "output file (default stdout)");
  cmd_fixture->add_option("--int-hi", fixture_int_hi,
                          "override the upper bound of the int type");

  // mutate
  auto* cmd_mutate = app.add_subcommand("mutate", "write all first-order mutants of a model");
  std::string mutate_file, mutate_dir = "mutants", mutate_ops_csv;
  cmd_mutate->add_option("model", mutate_file, "model file (.as)")->required();
  cmd_mutate->add_option("-d,--dir", mutate_dir, "output directory")->capture_default_str();
  cmd_mutate->add_option("--ops", mutate_ops_csv,
                         "comma-separated operators (guard_true,comp_invert,int_inc)");

  // check
  auto* cmd_check = app.add_subcommand("check", "check one original/mutant pair");
  std::string check_orig, check_mut, check_out;
  EngineSel check_engine = EngineSel::Symbolic;
  ReportFormat check_format = ReportFormat::Text;
  bool check_dump = false;
  BudgetFlags check_budget;
  cmd_check->add_option("original", check_orig, "original model (.as)")->required();
  cmd_check->add_option("mutant", check_mut, "mutant model (.as)")->required();
  cmd_check->add_option("--engine", check_engine, "analysis engine")
      ->transform(CLI::CheckedTransformer(engine_map, CLI::ignore_case))
      ->default_str("symbolic");
  cmd_check->add_option("--format", check_format, "report format")
      ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case))
      ->default_str("text");
  cmd_check->add_option("-o,--output", check_out, "report file (default stdout)");
  cmd_check->add_flag("--dump-formulas", check_dump,
                      "print translated formulas and constraints to stderr");
  check_budget.attach(cmd_check);

  // batch
  auto* cmd_batch = app.add_subcommand("batch", "check a model against all of its mutants");
  std::string batch_file, batch_out, batch_ops_csv;
  EngineSel batch_engine = EngineSel::Symbolic;
  ReportFormat batch_format = ReportFormat::Json;
  int batch_jobs = 0;
  bool batch_no_original = false;
  BudgetFlags batch_budget;
  cmd_batch->add_option("model", batch_file, "model file (.as)")->required();
  cmd_batch->add_option("--ops", batch_ops_csv,
                        "comma-separated operators (guard_true,comp_invert,int_inc)");
  cmd_batch->add_option("--engine", batch_engine, "analysis engine")
      ->transform(CLI::CheckedTransformer(engine_map, CLI::ignore_case))
      ->default_str("symbolic");
  cmd_batch->add_option("--format", batch_format, "report format")
      ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case))
      ->default_str("json");
  cmd_batch->add_option("--jobs", batch_jobs, "worker threads (0 = hardware concurrency)")
      ->capture_default_str();
  cmd_batch->add_flag("--no-original", batch_no_original,
                      "skip the self-check row for the unmutated model");
  cmd_batch->add_option("-o,--output", batch_out, "report file (default stdout)");
  batch_budget.attach(cmd_batch);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_parse->parsed()) {
      auto m = load_model(parse_file);
      if (!m) return kExitBadInput;
      if (parse_dump) {
        StepVarSpace space = make_step_space(*m);
        dump_check_formulas(*m, *m, space);
      }
      std::cout << "ok: " << parse_file << ": " << m->types.size() << " type(s), "
                << m->vars.size() << " variable(s), " << m->actions.size() << " action(s), "
                << m->dood.size() << " do-od entr" << (m->dood.size() == 1 ? "y" : "ies")
                << "\n";
      return 0;
    }

    if (cmd_fixture->parsed()) {
      int scale = 0;
      if (fixture_name.rfind("cas_", 0) == 0) {
        try {
          scale = std::stoi(fixture_name.substr(4));
        } catch (const std::exception&) {
          scale = 0;
        }
      }
      if (scale < 1) {
        std::cerr << "error: unknown fixture '" << fixture_name
                  << "' (expected cas_<scale>, e.g. cas_1 or cas_10)\n";
        return kExitBadInput;
      }
      return write_output(fixture_out, make_cas_text(scale, fixture_int_hi)) ? 0 : kExitBadInput;
    }

    if (cmd_mutate->parsed()) {
      MutationOps ops;
      std::string err;
      if (!parse_ops(mutate_ops_csv, ops, err)) {
        std::cerr << "error: " << err << "\n";
        return kExitBadInput;
      }
      auto m = load_model(mutate_file);
      if (!m) return kExitBadInput;
      std::vector<Mutant> mutants = enumerate_mutants(*m, ops);
      std::filesystem::create_directories(mutate_dir);
      std::vector<std::string> files;
      for (size_t i = 0; i < mutants.size(); ++i) {
        std::ostringstream name;
        name << "mut_" << std::setw(3) << std::setfill('0') << (i + 1) << ".as";
        std::string rel = name.str();
        std::ofstream f(std::filesystem::path(mutate_dir) / rel, std::ios::binary);
        f << pretty_print(mutants[i].model);
        if (!f) {
          std::cerr << "error: cannot write " << (std::filesystem::path(mutate_dir) / rel).string()
                    << "\n";
          return kExitBadInput;
        }
        files.push_back(rel);
      }
      std::ofstream mf(std::filesystem::path(mutate_dir) / "manifest.json", std::ios::binary);
      mf << mutant_manifest_json(mutate_file, mutants, files);
      if (!mf) {
        std::cerr << "error: cannot write manifest.json\n";
        return kExitBadInput;
      }
      std::cout << mutants.size() << " mutant(s) written to " << mutate_dir << "\n";
      return 0;
    }

    if (cmd_check->parsed()) {
      auto orig = load_model(check_orig);
      auto mut = load_model(check_mut);
      if (!orig || !mut) return kExitBadInput;
      if (check_dump) {
        StepVarSpace space = make_step_space(*orig, &*mut);
        dump_check_formulas(*orig, *mut, space);
      }
      CheckReportInput in;
      in.original_file = check_orig;
      in.mutant_file = check_mut;
      in.engine = check_engine;
      in.opts = check_budget.to_options();
      if (check_engine != EngineSel::Explicit)
        in.symbolic = check_symbolic(*orig, *mut, in.opts);
      if (check_engine != EngineSel::Symbolic)
        in.explicit_outcome = check_explicit(*orig, *mut, in.opts);
      if (in.symbolic && in.explicit_outcome)
        in.agree = outcomes_agree(*in.symbolic, *in.explicit_outcome);
      if (!write_output(check_out, render_check_report(in, check_format))) return kExitBadInput;
      const EngineOutcome& primary = in.symbolic ? *in.symbolic : *in.explicit_outcome;
      return verdict_exit(primary.verdict);
    }

    if (cmd_batch->parsed()) {
      BatchOptions opts;
      std::string err;
      if (!parse_ops(batch_ops_csv, opts.ops, err)) {
        std::cerr << "error: " << err << "\n";
        return kExitBadInput;
      }
      auto m = load_model(batch_file);
      if (!m) return kExitBadInput;
      opts.check = batch_budget.to_options();
      opts.engine = batch_engine;
      opts.jobs = batch_jobs;
      opts.include_original = !batch_no_original;
      BatchResult res = run_batch(*m, opts);
      if (!write_output(batch_out, render_report(res, opts, batch_format))) return kExitBadInput;
      return 0;
    }
  } catch (const TranslateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const MutationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;  // EX_SOFTWARE
  }
  return 0;
}
