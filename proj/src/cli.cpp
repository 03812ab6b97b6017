#include "semiradius/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "semiradius/report.hpp"
#include "semiradius/sharpness.hpp"

namespace semiradius {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

struct VerifyArgs {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::vector<int> dims;
  std::vector<std::string> ranks;
  std::vector<std::string> checks;
  std::string profile = "standard";
  std::string out_path;
  std::string format = "json";
  bool records = false;
};

struct RadiusArgs {
  std::string file;
  std::string op;
  std::int64_t brute_force = 0;
};

struct SharpArgs {
  std::string check;
  std::uint64_t seed = 0;
  std::int64_t budget = 2000;
  int restarts = 8;
  std::string ensemble;
  int dim = 0;
  std::string out_path;
};

struct ReplayArgs {
  std::string file;
  double tol = 1e-12;
};

std::string vector_text(const ComplexVector& v) {
  std::string s = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += "[" + format_number(v(k).real()) + ", " + format_number(v(k).imag()) + "]";
  }
  return s + "]";
}

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return true;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.count < 1) {
    err << "error: --count must be at least 1\n";
    return 2;
  }
  if (a.format != "json" && a.format != "csv") {
    err << "error: --format must be json or csv\n";
    return 2;
  }
  InstanceStream stream;
  stream.master_seed = a.seed;
  stream.count = a.count;
  stream.profile = Profile::named(a.profile);
  if (!a.dims.empty()) {
    for (int d : a.dims) {
      if (d < 1) throw Error(ErrorCode::kInvalidArgument, "dimensions must be positive");
    }
    stream.profile.dims = a.dims;
  }
  if (!a.ranks.empty()) {
    stream.profile.ranks.clear();
    for (const std::string& r : a.ranks) stream.profile.ranks.push_back(RankRule::parse(r));
  }
  Registry::standard().resolve(a.checks);

  RunOptions opts;
  opts.keep_records = a.records || a.format == "csv";
  VerificationReport report = run_registry(stream, a.checks, opts);
  report.tool_version = kToolVersion;

  std::string document;
  if (a.format == "csv") {
    std::ostringstream os;
    write_csv(report, os);
    document = os.str();
  } else {
    document = dump_report(report, a.records);
  }
  if (a.out_path == "-") {
    out << document;
  } else {
    for (const CheckAggregate& c : report.checks) {
      char line[160];
      std::snprintf(line, sizeof line, "%-26s %-6s instances=%zu passes=%zu violations=%zu skipped=%zu", c.check_id.c_str(),
                    std::string(to_string(c.mode)).c_str(), c.instances, c.passes, c.violations, c.skipped);
      out << line << " min_slack=" << (c.min_slack ? format_number(*c.min_slack) : "n/a") << "\n";
    }
    out << "assert violations: " << report.assert_violations() << "\n";
    out << "audit violations: " << report.audit_violations() << "\n";
    if (!a.out_path.empty() && !write_text(a.out_path, document, err)) return 2;
  }
  return report.assert_violations() > 0 ? 1 : 0;
}

int cmd_radius(const RadiusArgs& a, std::ostream& out, std::ostream& err) {
  const MatrixFile file = load_matrix_file(a.file);
  const SpacePtr space = SemiSpace::create(file.a, Tolerance::from_env());
  bool found = false;
  for (const auto& [name, m] : file.operators) {
    if (!a.op.empty() && name != a.op) continue;
    found = true;
    const Operator t(space, m);
    if (!t.admits_adjoint()) {
      err << "error: NoAdjoint: operator " << name << " fails the range criterion (residual "
          << format_number(t.adjoint_residual()) << ")\n";
      return 1;
    }
    const RadiusResult r = a_numerical_radius(t);
    out << "operator " << name << "\n";
    out << "w_A = " << format_number(r.value) << "\n";
    out << "norm_A = " << format_number(op_seminorm(t)) << "\n";
    out << "method = " << to_string(r.method) << "\n";
    if (r.cross_check_value) out << "cross_check = " << format_number(*r.cross_check_value) << "\n";
    out << "agreement_delta = " << format_number(r.agreement_delta) << "\n";
    out << "argmax_theta = " << format_number(r.argmax_theta) << "\n";
    out << "witness = " << vector_text(r.witness) << "\n";
    if (a.brute_force > 0) out << "brute_force = " << format_number(brute_force_radius(t, a.brute_force)) << "\n";
  }
  if (!found) {
    err << "error: no operator named " << a.op << "\n";
    return 2;
  }
  return 0;
}

int cmd_sharpness(const SharpArgs& a, std::ostream& out, std::ostream& err) {
  if (a.budget < 1) {
    err << "error: --budget must be at least 1\n";
    return 2;
  }
  SharpnessOptions opts;
  opts.seed = a.seed;
  opts.budget = a.budget;
  opts.restarts = a.restarts;
  if (!a.ensemble.empty()) opts.ensemble = parse_ensemble(a.ensemble);
  if (a.dim > 0) opts.dim = a.dim;
  const SharpnessResult r = search_sharpness(a.check, opts);
  out << "check " << r.check_id << "\n";
  if (r.best_restart < 0) {
    out << "best_ratio = n/a (no instance with rhs > 0)\n";
    return 0;
  }
  out << "best_ratio = " << format_number(r.best_ratio) << "\n";
  out << "lhs = " << format_number(r.lhs) << "\n";
  out << "rhs = " << format_number(r.rhs) << "\n";
  out << "evaluations = " << r.evaluations << "\n";
  out << "start_kind = " << to_string(r.start_kind) << "\n";
  out << "start_config = " << to_json(r.start_config).dump() << "\n";
  if (!a.out_path.empty() && !write_text(a.out_path, to_json(r.witness).dump(2) + "\n", err)) return 2;
  return 0;
}

int cmd_replay(const ReplayArgs& a, std::ostream& out) {
  std::ifstream in(a.file);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + a.file);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  const ReplayResult r = replay(report_from_json(j), a.tol);
  out << "replayed = " << r.replayed << "\n";
  out << "max_delta = " << format_number(r.max_delta) << "\n";
  for (const ReplayMismatch& m : r.mismatches) {
    out << "mismatch " << m.check_id << " " << m.instance_digest << " recorded=" << format_number(m.recorded_slack)
        << " replayed=" << format_number(m.replayed_slack) << "\n";
  }
  return r.mismatches.empty() ? 0 : 1;
}

int cmd_checks(std::ostream& out) {
  for (const Check& c : Registry::standard().checks()) {
    out << c.id << "\t" << to_string(c.mode) << "\tarity=" << c.arity << (c.requires_strict_a ? "\tA>0" : "\t-")
        << "\t" << c.statement << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"A-numerical radius toolkit and inequality verifier", "semiradius"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs,-j", jobs, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Evaluate the registry on generated instances");
  verify->add_option("--seed", va.seed, "Master seed");
  verify->add_option("--count", va.count, "Number of instances");
  verify->add_option("--dims", va.dims, "Dimensions, comma separated")->delimiter(',');
  verify->add_option("--ranks", va.ranks, "Rank rules: full, full-1 or k")->delimiter(',');
  verify->add_option("--checks", va.checks, "Check ids (default: all)")->delimiter(',');
  verify->add_option("--profile", va.profile, "standard, strict, degenerate, classical");
  verify->add_option("--out", va.out_path, "Report path ('-' for stdout)");
  verify->add_option("--format", va.format, "json or csv");
  verify->add_flag("--records", va.records, "Include per-instance records in the JSON report");

  RadiusArgs ra;
  auto* radius = app.add_subcommand("radius", "w_A and ||.||_A of operators in a MatrixFile");
  radius->add_option("file", ra.file, "MatrixFile (JSON)")->required();
  radius->add_option("--operator", ra.op, "Operator name (default: all)");
  radius->add_option("--brute-force", ra.brute_force, "Also print a sampled lower bound");

  SharpArgs sa;
  auto* sharp = app.add_subcommand("sharpness", "Search for instances where a check is tight");
  sharp->add_option("check", sa.check, "Check id")->required();
  sharp->add_option("--seed", sa.seed, "Seed");
  sharp->add_option("--budget", sa.budget, "Total evaluations");
  sharp->add_option("--restarts", sa.restarts, "Number of restarts");
  sharp->add_option("--ensemble", sa.ensemble, "Restrict to one ensemble");
  sharp->add_option("--dim", sa.dim, "Dimension");
  sharp->add_option("--out", sa.out_path, "Write the witness as a MatrixFile");

  ReplayArgs pa;
  auto* replay_cmd = app.add_subcommand("replay", "Recompute the witnesses of a JSON report");
  replay_cmd->add_option("report", pa.file, "Report path")->required();
  replay_cmd->add_option("--tol", pa.tol, "Allowed slack difference");

  auto* checks = app.add_subcommand("checks", "List registry checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    if (verify->parsed()) return cmd_verify(va, out, err);
    if (radius->parsed()) return cmd_radius(ra, out, err);
    if (sharp->parsed()) return cmd_sharpness(sa, out, err);
    if (replay_cmd->parsed()) return cmd_replay(pa, out);
    if (checks->parsed()) return cmd_checks(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kNoAdjoint ? 1 : 2;
  }
  return 2;
}

}  // namespace semiradius
