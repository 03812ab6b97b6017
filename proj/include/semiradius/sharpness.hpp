#pragma once

// Random-restart local search for instances on which a registry check is
// (nearly) tight, i.e. lhs / rhs close to 1.

#include <cstdint>
#include <optional>
#include <string>

#include "semiradius/inequalities.hpp"
#include "semiradius/report.hpp"

namespace semiradius {

struct SharpnessOptions {
  std::uint64_t seed = 0;
  /// Total number of check evaluations across all restarts.
  std::int64_t budget = 2000;
  int restarts = 8;
  /// Restrict random starts and perturbations to one ensemble.
  std::optional<Ensemble> ensemble;
  /// Dimension of the search space; cycles through 1..4 when unset.
  std::optional<int> dim;
  /// Pairs with rhs below this are ignored (ratio undefined).
  double rhs_floor = 1e-12;
  EvalOptions eval;
};

struct SharpnessResult {
  std::string check_id;
  double best_ratio = -1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::int64_t evaluations = 0;
  int best_restart = -1;
  /// Config and kind of the restart that produced the witness.
  GenConfig start_config;
  InstanceKind start_kind = InstanceKind::kGeneral;
  /// The witness itself (after perturbation), as a MatrixFile.
  MatrixFile witness;
};

/// Restarts alternate between the sharp seed (T1 = I, rest 0) and random
/// instances. Perturbations stay in the start's ensemble and are admissible
/// by construction. Restarts run in parallel; the result depends only on the
/// options. Throws UnknownCheckId, InvalidArgument (budget < 1).
SharpnessResult search_sharpness(const std::string& check_id, const SharpnessOptions& opts);
SharpnessResult search_sharpness_serial(const std::string& check_id, const SharpnessOptions& opts);

}  // namespace semiradius
