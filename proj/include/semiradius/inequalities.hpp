#pragma once

// Registry of the block-operator inequalities and identities. Each check maps
// an Instance to (lhs, rhs) with the convention lhs <= rhs (inequalities) or
// lhs = rhs (identities). Check ids are stable public names.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiradius/blocks.hpp"
#include "semiradius/genrand.hpp"

namespace semiradius {

enum class CheckMode { kAssert, kAudit };
enum class Relation { kInequality, kIdentity };

std::string_view to_string(CheckMode m);
std::string_view to_string(Relation r);

struct EvalOptions {
  RadiusOptions radius;
  /// holds <=> slack >= -slack_rel * max(1, |lhs|, |rhs|)
  double slack_rel = 1e-8;
  /// Vanishing-product preconditions: ||X Y||_A <= precondition_rel * max(1, ||X||_A ||Y||_A).
  double precondition_rel = 1e-10;
};

/// Memoizing view of one instance. w() and norm() cache by (space, matrix
/// bytes), so repeated sub-expressions across checks are computed once.
class EvalContext {
 public:
  EvalContext(const Instance& instance, const EvalOptions& opts);

  /// T1..T4 (1-based, matching the statement notation).
  const Operator& t(int i) const;
  const Instance& instance() const { return instance_; }
  const EvalOptions& options() const { return opts_; }

  double w(const Operator& op);
  double norm(const Operator& op);
  /// w_B of [[a, b], [c, d]].
  double wb(const Operator& a, const Operator& b, const Operator& c, const Operator& d);
  double nb(const Operator& a, const Operator& b, const Operator& c, const Operator& d);
  Operator zero() const { return Operator::zero(instance_.space); }

 private:
  const Instance& instance_;
  EvalOptions opts_;
  std::map<std::pair<const SemiSpace*, std::uint64_t>, double> w_cache_;
  std::map<std::pair<const SemiSpace*, std::uint64_t>, double> n_cache_;
};

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// nullopt means the instance does not satisfy the check's precondition.
using Evaluator = std::function<std::optional<Sides>(EvalContext&)>;

struct Check {
  std::string id;
  int arity = 1;
  bool requires_strict_a = false;
  CheckMode mode = CheckMode::kAssert;
  Relation relation = Relation::kInequality;
  std::string statement;
  Evaluator evaluator;
};

struct CheckResult {
  std::string check_id;
  CheckMode mode = CheckMode::kAssert;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = true;
  bool skipped = false;
  std::string skip_reason;
  std::string error;
  std::string instance_digest;
  std::uint64_t counter = 0;
  GenConfig cfg;
  InstanceKind kind = InstanceKind::kGeneral;
};

double slack_tolerance(double lhs, double rhs, double slack_rel = 1e-8);

class Registry {
 public:
  static const Registry& standard();

  const std::vector<Check>& checks() const { return checks_; }
  /// Resolves aliases ("thm20005" -> "thm20005-min-alpha-beta"). Throws UnknownCheckId.
  const Check& get(std::string_view id) const;
  bool contains(std::string_view id) const;
  std::vector<std::string> ids() const;
  /// Expands a selection (empty = all) into canonical ids in registry order.
  std::vector<std::string> resolve(const std::vector<std::string>& selection) const;

 private:
  Registry();

  std::vector<Check> checks_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, std::string, std::less<>> aliases_;
};

/// Throws ArityMismatch, RequiresStrictA, NoAdjoint or UnknownCheckId.
CheckResult evaluate(std::string_view check_id, const Instance& instance, const EvalOptions& opts = {});

/// Evaluates every selected check on one instance with a shared cache. Checks
/// whose requirements the instance does not meet come back skipped.
std::vector<CheckResult> evaluate_selection(const std::vector<std::string>& ids, const Instance& instance,
                                            const EvalOptions& opts = {});

/// Scalar forms of the two max/min identities for real a, b.
Sides scalar_max_identity(double a, double b);
Sides scalar_min_identity(double a, double b);

struct CheckAggregate {
  std::string check_id;
  CheckMode mode = CheckMode::kAssert;
  Relation relation = Relation::kInequality;
  std::string statement;
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  std::optional<double> min_slack;
  std::optional<CheckResult> tightest;
  std::vector<CheckResult> violation_records;
};

struct VerificationReport {
  std::string tool_version;
  std::uint64_t master_seed = 0;
  std::string profile;
  std::vector<int> dims;
  std::vector<std::string> ranks;
  std::size_t count = 0;
  Tolerance tolerance;
  double slack_rel = 1e-8;
  double wall_time = 0.0;
  std::vector<std::string> notes;
  std::vector<CheckAggregate> checks;
  /// One record per (check, instance), ordered by instance counter.
  std::vector<CheckResult> records;

  std::size_t assert_violations() const;
  std::size_t audit_violations() const;
  const CheckAggregate* find(std::string_view id) const;
};

struct RunOptions {
  EvalOptions eval;
  bool keep_records = true;
};

/// Evaluates the selection on every instance of the stream. Instances are
/// processed in parallel (OpenMP); the merge is ordered by instance counter,
/// so the report does not depend on thread count or completion order.
VerificationReport run_registry(const InstanceStream& stream, const std::vector<std::string>& selection,
                                const RunOptions& opts = {});
/// Single-threaded reference for run_registry.
VerificationReport run_registry_serial(const InstanceStream& stream, const std::vector<std::string>& selection,
                                       const RunOptions& opts = {});

/// Merges per-instance results (grouped by instance, in counter order).
VerificationReport aggregate(const std::vector<std::string>& ids, std::vector<std::vector<CheckResult>> per_instance,
                             bool keep_records);

/// Fixed note attached to every report about the weight used for the
/// antidiagonal-block bounds.
std::string antidiagonal_weight_note();

}  // namespace semiradius
