#pragma once

// Numerical radius w(M) and A-numerical radius w_A(T).
//
// w_A is computed twice: the theta sweep maximizes ||Re_A(e^{i theta} T)||_A
// using the A-adjoint calculus, and the reduction computes the classical w of
// the compression A^{1/2} T (A^{1/2})^+. The two must agree; a sampling oracle
// gives an independent lower bound.

#include <cstdint>
#include <optional>
#include <string_view>

#include "semiradius/semispace.hpp"
#include "semiradius/sweep.hpp"

namespace semiradius {

enum class RadiusMethod { kThetaSweep, kReduction, kBruteForce };

std::string_view to_string(RadiusMethod m);

struct RadiusOptions {
  SweepOptions sweep;
  /// Run the reduction route next to the theta sweep and compare.
  bool cross_check = true;
  double agreement_rel = 1e-7;
};

struct RadiusResult {
  double value = 0.0;
  double argmax_theta = 0.0;  // in [0, 2 pi)
  /// ||witness||_A = 1 (Euclidean norm for the classical radius) and
  /// |<T witness, witness>_A| >= value up to rounding.
  ComplexVector witness;
  RadiusMethod method = RadiusMethod::kThetaSweep;
  std::optional<double> cross_check_value;
  double agreement_delta = 0.0;
};

/// w(M) = max_theta lambda_max((e^{i theta} M + e^{-i theta} M*) / 2).
RadiusResult numerical_radius(const ComplexMatrix& m, const SweepOptions& opts = {});

/// w_A(T). Throws NoAdjoint for inadmissible T and InternalDisagreement when
/// the two routes differ by more than agreement_rel.
RadiusResult a_numerical_radius(const Operator& t, const RadiusOptions& opts = {});

/// Theta-sweep value alone (no witness, no cross-check).
double a_numerical_radius_sweep(const Operator& t, const SweepOptions& opts = {});

/// Max of |<Tx, x>_A| over `samples` random A-unit vectors in R(A). The best
/// sample of each chunk is refined by monotone local ascent. Always a lower
/// bound on w_A(T). Samples are drawn in fixed chunks with per-chunk seeds, so
/// the parallel and serial versions return identical values.
double brute_force_radius(const Operator& t, std::int64_t samples, std::uint64_t seed = 0);
double brute_force_radius_serial(const Operator& t, std::int64_t samples, std::uint64_t seed = 0);

}  // namespace semiradius
