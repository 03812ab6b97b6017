#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "semiradius/genrand.hpp"

namespace testing_support {

using semiradius::Complex;
using semiradius::ComplexMatrix;
using semiradius::ComplexVector;

inline ComplexMatrix gaussian(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  return m;
}

inline ComplexMatrix hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

// Spectral norm by full SVD; the library uses a Gram-matrix eigenvalue.
inline double svd_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

// Numerical radius on a dense theta grid with no refinement.
inline double dense_grid_radius(const ComplexMatrix& m, int points = 20000) {
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const Complex ph = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    const ComplexMatrix h = 0.5 * (ph * m + std::conj(ph) * m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

// Minimum-norm least-squares solution of A X = B: equals A^+ B.
inline ComplexMatrix min_norm_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  cod.setThreshold(1e-10);
  return cod.solve(b);
}

// sup |<Tx, x>_A| over random A-unit vectors x (no local ascent).
inline double sampled_a_radius(const ComplexMatrix& a, const ComplexMatrix& t, int samples, std::mt19937_64& rng) {
  double best = 0.0;
  const auto n = a.rows();
  for (int s = 0; s < samples; ++s) {
    ComplexVector x = gaussian(n, 1, rng);
    const double nx = std::sqrt(std::abs(x.dot(a * x)));
    if (nx < 1e-12) continue;
    x /= nx;
    best = std::max(best, std::abs(x.dot(a * t * x)));
  }
  return best;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace testing_support
