#include "semiradius/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace semiradius {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

CheckMode parse_mode(const std::string& s) {
  if (s == "assert") return CheckMode::kAssert;
  if (s == "audit") return CheckMode::kAudit;
  throw Error(ErrorCode::kParseError, "unknown check mode '" + s + "'");
}

Relation parse_relation(const std::string& s) {
  if (s == "inequality") return Relation::kInequality;
  if (s == "identity") return Relation::kIdentity;
  throw Error(ErrorCode::kParseError, "unknown relation '" + s + "'");
}

json aggregate_json(const CheckAggregate& c) {
  json j;
  j["check_id"] = c.check_id;
  j["mode"] = to_string(c.mode);
  j["relation"] = to_string(c.relation);
  j["statement"] = c.statement;
  j["instances"] = c.instances;
  j["passes"] = c.passes;
  j["violations"] = c.violations;
  j["skipped"] = c.skipped;
  j["holds"] = c.violations == 0;
  j["min_slack"] = c.min_slack ? number(*c.min_slack) : json(nullptr);
  j["tightest"] = c.tightest ? to_json(*c.tightest) : json(nullptr);
  j["violation_witnesses"] = json::array();
  for (const CheckResult& r : c.violation_records) j["violation_witnesses"].push_back(to_json(r));
  return j;
}

CheckAggregate aggregate_from_json(const json& j) {
  CheckAggregate c;
  c.check_id = j.at("check_id").get<std::string>();
  c.mode = parse_mode(j.at("mode").get<std::string>());
  c.relation = parse_relation(j.at("relation").get<std::string>());
  c.statement = j.at("statement").get<std::string>();
  c.instances = j.at("instances").get<std::size_t>();
  c.passes = j.at("passes").get<std::size_t>();
  c.violations = j.at("violations").get<std::size_t>();
  c.skipped = j.at("skipped").get<std::size_t>();
  if (!j.at("min_slack").is_null()) c.min_slack = j.at("min_slack").get<double>();
  if (!j.at("tightest").is_null()) c.tightest = check_result_from_json(j.at("tightest"));
  for (const json& w : j.at("violation_witnesses")) c.violation_records.push_back(check_result_from_json(w));
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json to_json(const GenConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"dim", cfg.dim},
              {"a_rank", cfg.a_rank},
              {"entry_scale", cfg.entry_scale},
              {"ensemble", to_string(cfg.ensemble)},
              {"space", to_string(cfg.space)}};
}

GenConfig gen_config_from_json(const json& j) {
  GenConfig cfg;
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.dim = j.at("dim").get<int>();
  cfg.a_rank = j.at("a_rank").get<int>();
  cfg.entry_scale = j.at("entry_scale").get<double>();
  cfg.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
  cfg.space = parse_space_kind(j.value("space", std::string("random")));
  cfg.validate();
  return cfg;
}

json to_json(const CheckResult& r) {
  json j{{"check_id", r.check_id},
         {"mode", to_string(r.mode)},
         {"lhs", number(r.lhs)},
         {"rhs", number(r.rhs)},
         {"slack", number(r.slack)},
         {"holds", r.holds},
         {"skipped", r.skipped},
         {"instance_digest", r.instance_digest},
         {"counter", r.counter},
         {"kind", to_string(r.kind)},
         {"config", to_json(r.cfg)}};
  if (!r.skip_reason.empty()) j["skip_reason"] = r.skip_reason;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

CheckResult check_result_from_json(const json& j) {
  CheckResult r;
  r.check_id = j.at("check_id").get<std::string>();
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.lhs = number_from(j.at("lhs"));
  r.rhs = number_from(j.at("rhs"));
  r.slack = number_from(j.at("slack"));
  r.holds = j.at("holds").get<bool>();
  r.skipped = j.at("skipped").get<bool>();
  r.instance_digest = j.at("instance_digest").get<std::string>();
  r.counter = j.at("counter").get<std::uint64_t>();
  r.kind = parse_instance_kind(j.at("kind").get<std::string>());
  r.cfg = gen_config_from_json(j.at("config"));
  r.skip_reason = j.value("skip_reason", std::string());
  r.error = j.value("error", std::string());
  return r;
}

json to_json(const VerificationReport& report, bool include_records) {
  json j;
  j["tool_version"] = report.tool_version.empty() ? kToolVersion : report.tool_version;
  j["master_seed"] = report.master_seed;
  j["profile"] = report.profile;
  j["dims"] = report.dims;
  j["ranks"] = report.ranks;
  j["count"] = report.count;
  j["tolerance"] = {{"rank_rel", report.tolerance.rank_rel}, {"residual_abs", report.tolerance.residual_abs}};
  j["slack_rel"] = report.slack_rel;
  j["wall_time"] = report.wall_time;
  j["summary"] = {{"assert_violations", report.assert_violations()},
                  {"audit_violations", report.audit_violations()},
                  {"holds", report.assert_violations() == 0}};
  j["notes"] = report.notes;
  j["checks"] = json::array();
  j["findings"] = json::array();
  for (const CheckAggregate& c : report.checks) {
    j["checks"].push_back(aggregate_json(c));
    if (c.mode != CheckMode::kAudit) continue;
    json f{{"check_id", c.check_id},
           {"statement", c.statement},
           {"instances", c.instances},
           {"violations", c.violations},
           {"skipped", c.skipped},
           {"min_slack", c.min_slack ? number(*c.min_slack) : json(nullptr)},
           {"verdict", c.violations > 0                ? "violated"
                       : c.instances == c.skipped      ? "not exercised"
                                                       : "no violation observed"}};
    j["findings"].push_back(std::move(f));
  }
  if (include_records) {
    j["records"] = json::array();
    for (const CheckResult& r : report.records) j["records"].push_back(to_json(r));
  }
  return j;
}

VerificationReport report_from_json(const json& j) {
  try {
    VerificationReport report;
    report.tool_version = j.at("tool_version").get<std::string>();
    report.master_seed = j.at("master_seed").get<std::uint64_t>();
    report.profile = j.at("profile").get<std::string>();
    report.dims = j.at("dims").get<std::vector<int>>();
    report.ranks = j.at("ranks").get<std::vector<std::string>>();
    report.count = j.at("count").get<std::size_t>();
    report.tolerance.rank_rel = j.at("tolerance").at("rank_rel").get<double>();
    report.tolerance.residual_abs = j.at("tolerance").at("residual_abs").get<double>();
    report.slack_rel = j.at("slack_rel").get<double>();
    report.wall_time = j.at("wall_time").get<double>();
    report.notes = j.at("notes").get<std::vector<std::string>>();
    for (const json& c : j.at("checks")) report.checks.push_back(aggregate_from_json(c));
    if (j.contains("records")) {
      for (const json& r : j.at("records")) report.records.push_back(check_result_from_json(r));
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string dump_report(const VerificationReport& report, bool include_records) {
  return to_json(report, include_records).dump(2) + "\n";
}

void write_csv(const VerificationReport& report, std::ostream& os) {
  os << "check_id,mode,counter,instance_digest,kind,seed,dim,a_rank,ensemble,space,entry_scale,lhs,rhs,slack,holds,"
        "skipped,skip_reason,error\n";
  for (const CheckResult& r : report.records) {
    os << r.check_id << ',' << to_string(r.mode) << ',' << r.counter << ',' << r.instance_digest << ','
       << to_string(r.kind) << ',' << r.cfg.seed << ',' << r.cfg.dim << ',' << r.cfg.a_rank << ','
       << to_string(r.cfg.ensemble) << ',' << to_string(r.cfg.space) << ',' << csv_number(r.cfg.entry_scale) << ','
       << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ',' << csv_number(r.slack) << ','
       << (r.holds ? "true" : "false") << ',' << (r.skipped ? "true" : "false") << ',' << csv_field(r.skip_reason)
       << ',' << csv_field(r.error) << '\n';
  }
}

ReplayResult replay(const VerificationReport& report, double tol, const EvalOptions& opts) {
  ReplayResult out;
  EvalOptions eval = opts;
  eval.slack_rel = report.slack_rel;
  auto check_one = [&](const CheckResult& rec) {
    if (rec.skipped || !rec.error.empty()) return;
    const Instance inst = gen_instance(rec.cfg, rec.kind, rec.counter);
    const CheckResult again = evaluate(rec.check_id, inst, eval);
    ++out.replayed;
    const double delta = std::abs(again.slack - rec.slack);
    if (!(delta <= tol) || again.instance_digest != rec.instance_digest) {
      out.mismatches.push_back({rec.check_id, rec.instance_digest, rec.slack, again.slack});
    }
    if (std::isfinite(delta)) out.max_delta = std::max(out.max_delta, delta);
  };
  for (const CheckAggregate& c : report.checks) {
    if (c.tightest) check_one(*c.tightest);
    for (const CheckResult& r : c.violation_records) check_one(r);
  }
  for (const CheckResult& r : report.records) check_one(r);
  return out;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::kParseError, what + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0);
  if (cols == 0) throw Error(ErrorCode::kParseError, what + ": rows must be nonempty arrays");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::kParseError, what + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorCode::kParseError, what + ": entries must be [re, im] pairs");
      }
    }
  }
  if (!all_finite(m)) throw Error(ErrorCode::kParseError, what + ": non-finite entry");
  return m;
}

MatrixFile parse_matrix_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!j.is_object() || !j.contains("A") || !j.contains("operators") || !j["operators"].is_object()) {
    throw Error(ErrorCode::kParseError, "expected an object with \"A\" and \"operators\"");
  }
  MatrixFile file;
  file.a = matrix_from_json(j["A"], "A");
  if (file.a.rows() != file.a.cols()) throw Error(ErrorCode::kParseError, "A is not square");
  file.dimension = static_cast<int>(file.a.rows());
  if (j.contains("dimension")) {
    if (!j["dimension"].is_number_integer() || j["dimension"].get<int>() != file.dimension) {
      throw Error(ErrorCode::kParseError, "dimension does not match A");
    }
  }
  for (const auto& [name, value] : j["operators"].items()) {
    ComplexMatrix m = matrix_from_json(value, name);
    if (m.rows() != file.dimension || m.cols() != file.dimension) {
      throw Error(ErrorCode::kParseError, name + ": expected " + std::to_string(file.dimension) + "x" +
                                              std::to_string(file.dimension));
    }
    file.operators.emplace_back(name, std::move(m));
  }
  if (file.operators.empty()) throw Error(ErrorCode::kParseError, "no operators");
  return file;
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_file(ss.str());
}

json to_json(const MatrixFile& file) {
  json ops = json::object();
  for (const auto& [name, m] : file.operators) ops[name] = matrix_to_json(m);
  return json{{"dimension", file.dimension}, {"A", matrix_to_json(file.a)}, {"operators", ops}};
}

}  // namespace semiradius
