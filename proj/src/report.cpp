#include "asrefine/report.hpp"

#include <sstream>

#include <json.hpp>

namespace asrefine {

namespace {

using nlohmann::json;

json event_json(const Event& e)
{
  return json{{"label", e.label}, {"args", e.args}};
}

json outcome_json(const EngineOutcome& o, bool symbolic)
{
  json j;
  j["verdict"] = to_string(o.verdict);
  if (o.unsafe) j["unsafe"] = o.unsafe->values;
  if (o.verdict == ReportVerdict::NonConforming) {
    json trace = json::array();
    for (const auto& ev : o.trace) trace.push_back(event_json(ev));
    j["trace"] = std::move(trace);
    j["trace_len"] = o.trace.size();
    if (o.witness) {
      j["witness"] = {{"event", event_json(o.witness->event)}, {"post", o.witness->post.values}};
    }
  }
  if (!o.note.empty()) j["note"] = o.note;
  j["times"] = {{"find_s", o.find_s}, {"reach_s", o.reach_s}, {"total_s", o.total_s}};
  if (symbolic) {
    if (o.mutated_action >= 0) j["mutated_action"] = o.mutated_action;
    j["solver"] = {{"solve_calls", o.solver.solve_calls},
                   {"nodes", o.solver.nodes},
                   {"backtracks", o.solver.backtracks},
                   {"time_s", o.solver.time_s}};
  } else {
    j["stats"] = {{"candidates", o.explicit_stats.candidates},
                  {"transitions", o.explicit_stats.transitions},
                  {"states_expanded", o.explicit_stats.states_expanded}};
  }
  return j;
}

json row_json(const MutantRow& row)
{
  json j;
  j["id"] = row.id;
  if (row.spec) {
    j["op"] = to_string(row.spec->op);
    j["location"] = path_to_string(row.spec->location);
    j["action"] = row.spec->action_label;
    j["original"] = row.spec->original;
    j["replacement"] = row.spec->replacement;
  } else {
    j["kind"] = "original";
  }
  if (row.symbolic) j["symbolic"] = outcome_json(*row.symbolic, true);
  if (row.explicit_outcome) j["explicit"] = outcome_json(*row.explicit_outcome, false);
  if (row.symbolic && row.explicit_outcome) j["agree"] = row.agree;
  return j;
}

const char* engine_name(EngineSel e)
{
  switch (e) {
    case EngineSel::Symbolic: return "symbolic";
    case EngineSel::Explicit: return "explicit";
    case EngineSel::Both: return "both";
  }
  return "?";
}

std::string csv_escape(const std::string& s)
{
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const BatchResult& res)
{
  std::ostringstream os;
  os << "id,op,location,action,original,replacement,verdict,unsafe,trace_len,"
        "find_s,reach_s,total_s,solve_calls,nodes,backtracks,"
        "explicit_verdict,explicit_candidates,agree\n";
  for (const auto& row : res.rows) {
    os << row.id << ',';
    if (row.spec) {
      os << to_string(row.spec->op) << ',' << path_to_string(row.spec->location) << ','
         << csv_escape(row.spec->action_label) << ',' << csv_escape(row.spec->original) << ','
         << csv_escape(row.spec->replacement) << ',';
    } else {
      os << "original,,,,,";
    }
    if (row.symbolic) {
      const EngineOutcome& o = *row.symbolic;
      os << to_string(o.verdict) << ',';
      os << (o.unsafe ? csv_escape(to_string(*o.unsafe)) : std::string()) << ',';
      if (o.verdict == ReportVerdict::NonConforming)
        os << o.trace.size();
      os << ',';
      os << o.find_s << ',' << o.reach_s << ',' << o.total_s << ',' << o.solver.solve_calls << ','
         << o.solver.nodes << ',' << o.solver.backtracks << ',';
    } else {
      os << ",,,,,,,,,";
    }
    if (row.explicit_outcome) {
      const EngineOutcome& o = *row.explicit_outcome;
      os << to_string(o.verdict) << ',' << o.explicit_stats.candidates << ',';
      os << (row.symbolic ? (row.agree ? "yes" : "no") : "");
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

std::string render_text(const BatchResult& res, const BatchOptions& opts)
{
  std::ostringstream os;
  for (const auto& row : res.rows) {
    os << '#' << row.id << ' ';
    if (row.spec) {
      os << to_string(row.spec->op) << " @ " << path_to_string(row.spec->location) << " in '"
         << row.spec->action_label << "' (" << row.spec->original << " -> "
         << row.spec->replacement << ")";
    } else {
      os << "original";
    }
    os << '\n';
    auto describe = [&os](const char* name, const EngineOutcome& o) {
      os << "  " << name << ": " << to_string(o.verdict);
      if (o.unsafe) {
        os << "  unsafe " << to_string(*o.unsafe) << " after " << o.trace.size() << " step(s)";
        if (o.witness) os << " via " << to_string(o.witness->event);
      }
      if (!o.note.empty()) os << "  (" << o.note << ')';
      os << '\n';
    };
    if (row.symbolic) describe("symbolic", *row.symbolic);
    if (row.explicit_outcome) describe("explicit", *row.explicit_outcome);
    if (row.symbolic && row.explicit_outcome && !row.agree) os << "  ** engines disagree **\n";
  }
  os << "----\n";
  os << "engine " << engine_name(opts.engine) << ", " << res.rows.size() << " row(s): "
     << res.summary.nonconforming << " nonconforming, " << res.summary.equiv_proved
     << " equiv_proved, " << res.summary.equiv_bounded << " equiv_bounded, "
     << res.summary.inconclusive << " inconclusive";
  if (opts.engine == EngineSel::Both)
    os << ", " << res.summary.disagreements << " disagreement(s)";
  os << " in " << res.wall_s << "s\n";
  return os.str();
}

}  // namespace

std::string render_report(const BatchResult& res, const BatchOptions& opts, ReportFormat fmt)
{
  switch (fmt) {
    case ReportFormat::Csv:
      return render_csv(res);
    case ReportFormat::Text:
      return render_text(res, opts);
    case ReportFormat::Json:
      break;
  }
  json j;
  j["schema_version"] = 1;
  j["engine"] = engine_name(opts.engine);
  j["max_depth"] = opts.check.max_depth;
  j["solver_budget"] = {{"max_nodes", opts.check.solver_budget.max_nodes},
                        {"timeout_s", opts.check.solver_budget.timeout_s}};
  j["explicit_budget"] = {{"max_candidates", opts.check.explicit_limits.max_candidates},
                          {"timeout_s", opts.check.explicit_limits.timeout_s}};
  json rows = json::array();
  for (const auto& row : res.rows) rows.push_back(row_json(row));
  j["mutants"] = std::move(rows);
  j["summary"] = {{"nonconforming", res.summary.nonconforming},
                  {"equiv_proved", res.summary.equiv_proved},
                  {"equiv_bounded", res.summary.equiv_bounded},
                  {"inconclusive", res.summary.inconclusive},
                  {"disagreements", res.summary.disagreements},
                  {"wall_s", res.wall_s}};
  return j.dump(2) + "\n";
}

std::string render_check_report(const CheckReportInput& in, ReportFormat fmt)
{
  if (fmt == ReportFormat::Csv) {
    std::ostringstream os;
    os << "engine,verdict,unsafe,trace_len,find_s,reach_s,total_s,"
          "solve_calls,nodes,backtracks,candidates,agree\n";
    auto line = [&os, &in](const char* name, const EngineOutcome& o, bool symbolic) {
      os << name << ',' << to_string(o.verdict) << ','
         << (o.unsafe ? csv_escape(to_string(*o.unsafe)) : std::string()) << ',';
      if (o.verdict == ReportVerdict::NonConforming) os << o.trace.size();
      os << ',' << o.find_s << ',' << o.reach_s << ',' << o.total_s << ',';
      if (symbolic)
        os << o.solver.solve_calls << ',' << o.solver.nodes << ',' << o.solver.backtracks << ",,";
      else
        os << ",,," << o.explicit_stats.candidates << ',';
      os << (in.symbolic && in.explicit_outcome ? (in.agree ? "yes" : "no") : "") << '\n';
    };
    if (in.symbolic) line("symbolic", *in.symbolic, true);
    if (in.explicit_outcome) line("explicit", *in.explicit_outcome, false);
    return os.str();
  }
  if (fmt == ReportFormat::Text) {
    std::ostringstream os;
    os << in.original_file << " vs " << in.mutant_file << '\n';
    auto describe = [&os](const char* name, const EngineOutcome& o) {
      os << "  " << name << ": " << to_string(o.verdict);
      if (o.unsafe) {
        os << "  unsafe " << to_string(*o.unsafe) << " after " << o.trace.size() << " step(s)";
        if (o.witness) os << " via " << to_string(o.witness->event);
      }
      if (!o.note.empty()) os << "  (" << o.note << ')';
      os << '\n';
    };
    if (in.symbolic) describe("symbolic", *in.symbolic);
    if (in.explicit_outcome) describe("explicit", *in.explicit_outcome);
    if (in.symbolic && in.explicit_outcome && !in.agree) os << "  ** engines disagree **\n";
    return os.str();
  }
  json j;
  j["schema_version"] = 1;
  j["mode"] = "check";
  j["original"] = in.original_file;
  j["mutant"] = in.mutant_file;
  j["engine"] = engine_name(in.engine);
  j["max_depth"] = in.opts.max_depth;
  j["solver_budget"] = {{"max_nodes", in.opts.solver_budget.max_nodes},
                        {"timeout_s", in.opts.solver_budget.timeout_s}};
  j["explicit_budget"] = {{"max_candidates", in.opts.explicit_limits.max_candidates},
                          {"timeout_s", in.opts.explicit_limits.timeout_s}};
  if (in.symbolic) j["symbolic"] = outcome_json(*in.symbolic, true);
  if (in.explicit_outcome) j["explicit"] = outcome_json(*in.explicit_outcome, false);
  if (in.symbolic && in.explicit_outcome) j["agree"] = in.agree;
  return j.dump(2) + "\n";
}

std::string mutant_manifest_json(const std::string& source_file,
                                 const std::vector<Mutant>& mutants,
                                 const std::vector<std::string>& files)
{
  json j;
  j["schema_version"] = 1;
  j["source"] = source_file;
  j["count"] = mutants.size();
  json arr = json::array();
  for (size_t i = 0; i < mutants.size(); ++i) {
    const MutantSpec& s = mutants[i].spec;
    json m;
    m["id"] = i + 1;  // id 0 is reserved for the unmutated original
    m["op"] = to_string(s.op);
    m["location"] = path_to_string(s.location);
    m["action"] = s.action_label;
    m["original"] = s.original;
    m["replacement"] = s.replacement;
    m["line"] = s.loc.line;
    m["col"] = s.loc.col;
    if (i < files.size()) m["file"] = files[i];
    arr.push_back(std::move(m));
  }
  j["mutants"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace asrefine
