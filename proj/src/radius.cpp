#include "semiradius/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace semiradius {

std::string_view to_string(RadiusMethod m) {
  switch (m) {
    case RadiusMethod::kThetaSweep: return "theta_sweep";
    case RadiusMethod::kReduction: return "reduction";
    case RadiusMethod::kBruteForce: return "brute_force";
  }
  return "unknown";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix rotated_hermitian(const ComplexMatrix& m, double theta) {
  const Complex phase = std::polar(1.0, theta);
  return 0.5 * (phase * m + std::conj(phase) * m.adjoint());
}

// Eigenvector of the Hermitian matrix h for the eigenvalue of largest modulus
// (largest value when `signed_max`).
std::pair<double, ComplexVector> extreme_pair(const ComplexMatrix& h, bool signed_max) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  const auto n = h.rows();
  const double hi = solver.eigenvalues()(n - 1);
  const double lo = solver.eigenvalues()(0);
  if (signed_max || std::abs(hi) >= std::abs(lo)) return {hi, solver.eigenvectors().col(n - 1)};
  return {lo, solver.eigenvectors().col(0)};
}

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTwoPi);
  return theta < 0.0 ? theta + kTwoPi : theta;
}

struct SweptOperator {
  ComplexMatrix c;   // compression of T
  ComplexMatrix cs;  // compression of T^#
  SweepResult sweep;
};

// Compression is linear, so Re_A(e^{i theta} T) compresses to a combination
// of the two fixed compressions. ||Re_A(e^{i theta} T)||_A has period pi.
SweptOperator sweep_theta(const Operator& t, const SweepOptions& opts) {
  if (!t.admits_adjoint()) {
    throw Error(ErrorCode::kNoAdjoint, "range criterion residual " + std::to_string(t.adjoint_residual()));
  }
  SweptOperator out{compression(t), compression(sharp(t)), {}};
  const ScalarFn g = [&out](double theta) {
    const Complex phase = std::polar(1.0, theta);
    return spectral_norm(0.5 * (phase * out.c + std::conj(phase) * out.cs));
  };
  out.sweep = maximize_periodic(g, std::numbers::pi, opts);
  return out;
}

ComplexVector pull_back_witness(const SemiSpace& s, const ComplexVector& y) {
  ComplexVector x = s.half_pinv() * y;
  double norm = vec_seminorm(x, s);
  if (!(norm > 1e-300) && s.rank() > 0) {
    x = s.half_pinv() * s.range_basis().col(0);
    norm = vec_seminorm(x, s);
  }
  if (norm > 0.0) x /= norm;
  return x;
}

}  // namespace

RadiusResult numerical_radius(const ComplexMatrix& m, const SweepOptions& opts) {
  require_square(m, "numerical_radius input");
  require_finite(m, "numerical_radius input");
  const ScalarFn f = [&m](double theta) { return lambda_max_unchecked(rotated_hermitian(m, theta)); };
  const SweepResult best = maximize_periodic(f, kTwoPi, opts);
  RadiusResult out;
  out.method = RadiusMethod::kReduction;
  out.argmax_theta = wrap_angle(best.theta);
  auto [value, vec] = extreme_pair(rotated_hermitian(m, best.theta), true);
  out.value = std::max({0.0, best.value, value});
  out.witness = vec.normalized();
  return out;
}

double a_numerical_radius_sweep(const Operator& t, const SweepOptions& opts) {
  const SweptOperator swept = sweep_theta(t, opts);
  return std::max(0.0, swept.sweep.value);
}

RadiusResult a_numerical_radius(const Operator& t, const RadiusOptions& opts) {
  const SweptOperator swept = sweep_theta(t, opts.sweep);
  const SemiSpace& s = *t.space();
  const ComplexMatrix& c = swept.c;
  const ComplexMatrix& cs = swept.cs;
  const SweepResult& sweep = swept.sweep;

  RadiusResult out;
  out.method = RadiusMethod::kThetaSweep;
  out.value = std::max(0.0, sweep.value);

  if (opts.cross_check) {
    const RadiusResult reduced = numerical_radius(c, opts.sweep);
    out.cross_check_value = reduced.value;
    out.agreement_delta = std::abs(out.value - reduced.value);
    const double floor = 1e-13 * std::max(1.0, c.norm());
    if (out.agreement_delta > opts.agreement_rel * std::max(out.value, reduced.value) + floor) {
      throw Error(ErrorCode::kInternalDisagreement,
                  "theta sweep " + std::to_string(out.value) + " vs reduction " + std::to_string(reduced.value));
    }
    out.argmax_theta = reduced.argmax_theta;
    out.witness = pull_back_witness(s, reduced.witness);
  } else {
    const Complex phase = std::polar(1.0, sweep.theta);
    auto [lambda, y] = extreme_pair(0.5 * (phase * c + std::conj(phase) * cs), false);
    out.argmax_theta = wrap_angle(lambda < 0.0 ? sweep.theta + std::numbers::pi : sweep.theta);
    out.witness = pull_back_witness(s, y);
  }
  return out;
}

namespace {

constexpr std::int64_t kChunk = 4096;
constexpr int kAscentSteps = 1000;

struct ReducedForm {
  ComplexMatrix k;  // G* A M G with G = Q_r D^{-1/2}
  ComplexMatrix g;
};

ReducedForm reduce_for_sampling(const Operator& t) {
  const SemiSpace& s = *t.space();
  ReducedForm r;
  r.g = s.range_basis() * s.range_eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  r.k = r.g.adjoint() * (s.weight() * t.matrix()) * r.g;
  return r;
}

struct ChunkBest {
  double value = -1.0;
  ComplexVector z;
};

ChunkBest sample_chunk(const ComplexMatrix& k, std::int64_t chunk, std::int64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(chunk + 1)));
  std::normal_distribution<double> normal;
  const auto r = k.rows();
  ComplexVector z(r);
  ChunkBest best;
  for (std::int64_t i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) z(j) = Complex(normal(rng), normal(rng));
    z /= z.norm();
    const double v = std::abs(z.dot(k * z));
    if (v > best.value) {
      best.value = v;
      best.z = z;
    }
  }
  return best;
}

// Alternating ascent: align the phase of z* K z, then move to the top
// eigenvector of the matching Hermitian part. |z* K z| never decreases.
double local_ascent(const ComplexMatrix& k, ComplexVector z, double start) {
  double best = start;
  for (int step = 0; step < kAscentSteps; ++step) {
    const Complex q = z.dot(k * z);
    const Complex phase = std::abs(q) > 0.0 ? std::conj(q) / std::abs(q) : Complex(1.0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (phase * k + std::conj(phase) * k.adjoint()));
    z = solver.eigenvectors().col(k.rows() - 1);
    const double v = std::abs(z.dot(k * z));
    if (v <= best * (1.0 + 1e-15)) {
      best = std::max(best, v);
      if (step > 0) break;
      continue;
    }
    best = v;
  }
  return best;
}

double brute_force_impl(const Operator& t, std::int64_t samples, std::uint64_t seed, bool parallel) {
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  if (!t.admits_adjoint()) {
    throw Error(ErrorCode::kNoAdjoint, "range criterion residual " + std::to_string(t.adjoint_residual()));
  }
  if (t.space()->rank() == 0) return 0.0;
  const ReducedForm red = reduce_for_sampling(t);
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ChunkBest> bests(static_cast<std::size_t>(chunks));
  auto run = [&](std::int64_t c) {
    const std::int64_t count = std::min(kChunk, samples - c * kChunk);
    bests[static_cast<std::size_t>(c)] = sample_chunk(red.k, c, count, seed);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) run(c);
  } else {
    for (std::int64_t c = 0; c < chunks; ++c) run(c);
  }
  // Every chunk winner is refined; the reduction is order independent.
  double best = 0.0;
  for (const ChunkBest& b : bests) best = std::max(best, local_ascent(red.k, b.z, b.value));
  return best;
}

}  // namespace

double brute_force_radius(const Operator& t, std::int64_t samples, std::uint64_t seed) {
  return brute_force_impl(t, samples, seed, true);
}

double brute_force_radius_serial(const Operator& t, std::int64_t samples, std::uint64_t seed) {
  return brute_force_impl(t, samples, seed, false);
}

}  // namespace semiradius
