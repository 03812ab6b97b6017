#pragma once

// Serialization of verification reports (JSON, CSV), replay of recorded
// witnesses, and the MatrixFile format for user-supplied operators.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semiradius/inequalities.hpp"

namespace semiradius {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json to_json(const GenConfig& cfg);
GenConfig gen_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CheckResult& r);
CheckResult check_result_from_json(const nlohmann::json& j);

/// Per-instance records are written only when `include_records` is set; the
/// per-check aggregates, witnesses and the findings section always are.
nlohmann::json to_json(const VerificationReport& report, bool include_records = false);
VerificationReport report_from_json(const nlohmann::json& j);

/// Two-space indented JSON with a trailing newline.
std::string dump_report(const VerificationReport& report, bool include_records = false);

/// One row per (check, instance): needs a report built with keep_records.
void write_csv(const VerificationReport& report, std::ostream& os);

struct ReplayMismatch {
  std::string check_id;
  std::string instance_digest;
  double recorded_slack = 0.0;
  double replayed_slack = 0.0;
};

struct ReplayResult {
  std::size_t replayed = 0;
  double max_delta = 0.0;
  std::vector<ReplayMismatch> mismatches;
};

/// Regenerates every witness of the report (tightest and violation records,
/// plus per-instance records when present) from its GenConfig and compares
/// the recomputed slack with the stored one.
ReplayResult replay(const VerificationReport& report, double tol = 1e-12, const EvalOptions& opts = {});

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& what);

/// {"dimension": n, "A": [[[re, im], ...], ...], "operators": {"T": ...}}
struct MatrixFile {
  int dimension = 0;
  ComplexMatrix a;
  std::vector<std::pair<std::string, ComplexMatrix>> operators;
};

/// Throws ParseError on malformed documents or inconsistent shapes.
MatrixFile parse_matrix_file(const std::string& text);
MatrixFile load_matrix_file(const std::string& path);
nlohmann::json to_json(const MatrixFile& file);

}  // namespace semiradius
