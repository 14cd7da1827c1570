#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "asrefine/fixtures.hpp"
#include "asrefine/report.hpp"
#include "testutil.hpp"

using namespace asrefine;
using nlohmann::json;
using testutil::must_parse;

namespace {

// One small batch exercised by most cases: the original plus twovar's two
// mutants, both of which diverge at init.
BatchResult twovar_batch(BatchOptions& opts)
{
  Model m = must_parse(testutil::twovar_text());
  opts.engine = EngineSel::Both;
  opts.jobs = 1;
  return run_batch(m, opts);
}

std::vector<std::string> lines(const std::string& s)
{
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("batch json carries configuration, rows and summary")
{
  BatchOptions opts;
  BatchResult res = twovar_batch(opts);
  json j = json::parse(render_report(res, opts, ReportFormat::Json));

  CHECK(j["schema_version"] == 1);
  CHECK(j["engine"] == "both");
  CHECK(j["max_depth"] == 20);
  CHECK(j["solver_budget"]["max_nodes"] == 1000000);
  CHECK(j["solver_budget"]["timeout_s"] == 10.0);
  CHECK(j["explicit_budget"]["max_candidates"] == 1000000);

  REQUIRE(j["mutants"].size() == 3);
  const json& orig = j["mutants"][0];
  CHECK(orig["id"] == 0);
  CHECK(orig["kind"] == "original");
  CHECK(orig["symbolic"]["verdict"] == "equiv_proved");
  CHECK(orig["explicit"]["verdict"] == "equiv_bounded");
  CHECK(orig["agree"] == true);
  CHECK(orig["symbolic"]["solver"]["solve_calls"].get<int>() == 0);
  CHECK(orig["explicit"]["stats"]["candidates"].get<int>() > 0);

  const json& row = j["mutants"][1];
  CHECK(row["id"] == 1);
  CHECK(row["op"] == "guard_true");
  CHECK(row["location"] == "2.1.0");
  CHECK(row["action"] == "copy");
  CHECK(row["replacement"] == "true");
  CHECK(row["symbolic"]["verdict"] == "nonconforming");
  CHECK(row["symbolic"]["unsafe"] == json::array({0, 0}));
  CHECK(row["symbolic"]["trace_len"] == 0);
  CHECK(row["symbolic"]["trace"] == json::array());
  CHECK(row["symbolic"]["witness"]["event"]["label"] == "copy");
  CHECK(row["symbolic"]["witness"]["post"] == json::array({0, 0}));
  CHECK(row["symbolic"]["times"].contains("find_s"));
  CHECK(row["symbolic"]["mutated_action"] == 1);

  CHECK(j["summary"]["nonconforming"] == 2);
  CHECK(j["summary"]["equiv_proved"] == 1);
  CHECK(j["summary"]["equiv_bounded"] == 0);
  CHECK(j["summary"]["inconclusive"] == 0);
  CHECK(j["summary"]["disagreements"] == 0);
  CHECK(j["summary"]["wall_s"].get<double>() >= 0.0);
}

TEST_CASE("batch csv has the fixed header and one row per mutant")
{
  BatchOptions opts;
  BatchResult res = twovar_batch(opts);
  auto ls = lines(render_report(res, opts, ReportFormat::Csv));
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] ==
        "id,op,location,action,original,replacement,verdict,unsafe,trace_len,"
        "find_s,reach_s,total_s,solve_calls,nodes,backtracks,"
        "explicit_verdict,explicit_candidates,agree");
  CHECK(ls[1].rfind("0,original,,,,,equiv_proved,", 0) == 0);
  CHECK(ls[1].back() == 's');  // agree column: "yes"
  // The unsafe state embeds a comma, so it must arrive quoted.
  CHECK(ls[2].rfind("1,guard_true,2.1.0,copy,", 0) == 0);
  CHECK(ls[2].find(",nonconforming,\"[0, 0]\",0,") != std::string::npos);
  CHECK(ls[3].rfind("2,comp_invert,", 0) == 0);
}

TEST_CASE("batch text summarizes per row and in aggregate")
{
  BatchOptions opts;
  BatchResult res = twovar_batch(opts);
  std::string text = render_report(res, opts, ReportFormat::Text);
  CHECK(text.find("#0 original\n") != std::string::npos);
  CHECK(text.find("#1 guard_true @ 2.1.0 in 'copy' (") != std::string::npos);
  CHECK(text.find("  symbolic: nonconforming  unsafe [0, 0] after 0 step(s) via 'copy'\n") !=
        std::string::npos);
  CHECK(text.find("engine both, 3 row(s): 2 nonconforming, 1 equiv_proved, "
                  "0 equiv_bounded, 0 inconclusive, 0 disagreement(s) in") != std::string::npos);
  CHECK(text.find("** engines disagree **") == std::string::npos);

  // Force a disagreement marker.
  res.rows[1].agree = false;
  res.summary.disagreements = 1;
  std::string marked = render_report(res, opts, ReportFormat::Text);
  CHECK(marked.find("  ** engines disagree **\n") != std::string::npos);
  CHECK(marked.find("1 disagreement(s)") != std::string::npos);
}

TEST_CASE("an empty batch still renders in every format")
{
  Model m = must_parse(testutil::counter_text());
  BatchOptions opts;
  opts.ops = MutationOps{false, true, false};  // counter has no #=/#\= atoms
  opts.include_original = false;
  BatchResult res = run_batch(m, opts);
  REQUIRE(res.rows.empty());

  json j = json::parse(render_report(res, opts, ReportFormat::Json));
  CHECK(j["mutants"] == json::array());
  CHECK(lines(render_report(res, opts, ReportFormat::Csv)).size() == 1);
  std::string text = render_report(res, opts, ReportFormat::Text);
  CHECK(text.find("engine symbolic, 0 row(s): 0 nonconforming") != std::string::npos);
}

TEST_CASE("check reports cover both engines in all three formats")
{
  Model orig = must_parse(testutil::chain_text(5));
  Model mut = must_parse(testutil::chain_text(2));
  CheckReportInput in;
  in.original_file = "a.as";
  in.mutant_file = "b.as";
  in.engine = EngineSel::Both;
  in.symbolic = check_symbolic(orig, mut, in.opts);
  in.explicit_outcome = check_explicit(orig, mut, in.opts);
  in.agree = outcomes_agree(*in.symbolic, *in.explicit_outcome);
  REQUIRE(in.agree);

  json j = json::parse(render_check_report(in, ReportFormat::Json));
  CHECK(j["schema_version"] == 1);
  CHECK(j["mode"] == "check");
  CHECK(j["original"] == "a.as");
  CHECK(j["mutant"] == "b.as");
  CHECK(j["engine"] == "both");
  CHECK(j["symbolic"]["verdict"] == "nonconforming");
  CHECK(j["symbolic"]["trace_len"] == 2);
  CHECK(j["symbolic"]["trace"][0]["label"] == "adv");
  CHECK(j["explicit"]["verdict"] == "nonconforming");
  CHECK(j["explicit"]["stats"].contains("candidates"));
  CHECK(j["agree"] == true);

  auto ls = lines(render_check_report(in, ReportFormat::Csv));
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] ==
        "engine,verdict,unsafe,trace_len,find_s,reach_s,total_s,"
        "solve_calls,nodes,backtracks,candidates,agree");
  CHECK(ls[1].rfind("symbolic,nonconforming,[2],2,", 0) == 0);
  CHECK(ls[2].rfind("explicit,nonconforming,[2],2,", 0) == 0);

  std::string text = render_check_report(in, ReportFormat::Text);
  CHECK(text.rfind("a.as vs b.as\n", 0) == 0);
  CHECK(text.find("  symbolic: nonconforming  unsafe [2] after 2 step(s) via 'ping'\n") !=
        std::string::npos);
  CHECK(text.find("  explicit: nonconforming") != std::string::npos);
}

TEST_CASE("the mutant manifest numbers files from one")
{
  Model m = must_parse(testutil::twovar_text());
  auto mutants = enumerate_mutants(m);
  std::vector<std::string> files{"mutants/mut_001.as", "mutants/mut_002.as"};
  json j = json::parse(mutant_manifest_json("twovar.as", mutants, files));
  CHECK(j["schema_version"] == 1);
  CHECK(j["source"] == "twovar.as");
  CHECK(j["count"] == 2);
  REQUIRE(j["mutants"].size() == 2);
  CHECK(j["mutants"][0]["id"] == 1);
  CHECK(j["mutants"][0]["op"] == "guard_true");
  CHECK(j["mutants"][0]["action"] == "copy");
  CHECK(j["mutants"][0]["file"] == "mutants/mut_001.as");
  CHECK(j["mutants"][0]["line"].get<int>() >= 1);
  CHECK(j["mutants"][1]["id"] == 2);
  CHECK(j["mutants"][1]["file"] == "mutants/mut_002.as");
}
