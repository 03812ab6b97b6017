#pragma once

// Dense complex linear algebra used by every other module. Decompositions are
// delegated to Eigen; this layer owns the rank cutoff, the Hermitian
// symmetrization and the error reporting.

#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "semiradius/error.hpp"

namespace semiradius {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical cutoffs shared by the whole calculus.
///
/// `rank_rel` decides which singular values (or eigenvalues of a PSD weight)
/// count as zero relative to the largest one. `residual_abs` bounds the
/// residual of structural tests (Hermiticity, range inclusion, Penrose
/// equations) after scaling by max(1, norm).
struct Tolerance {
  double rank_rel = 1e-10;
  double residual_abs = 1e-9;

  void validate() const;

  /// Defaults, with `residual_abs` overridden by SEMIRADIUS_TOL when set.
  static Tolerance from_env();
};

struct EigenSystem {
  RealVector values;     // descending
  ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

bool all_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Throws NotHermitian when ||H - H*|| > residual_abs * max(1, ||H||).
EigenSystem hermitian_eigen(const ComplexMatrix& h, const Tolerance& tol = {});

/// Eigenvalues only, descending. Same preconditions as hermitian_eigen.
RealVector hermitian_eigenvalues(const ComplexMatrix& h, const Tolerance& tol = {});

/// Largest eigenvalue of the Hermitian part of `h`, no checks. Hot-loop helper.
double lambda_max_unchecked(const ComplexMatrix& h);

/// Moore-Penrose pseudoinverse by SVD; singular values below
/// rank_rel * sigma_max are treated as zero.
ComplexMatrix pinv(const ComplexMatrix& m, const Tolerance& tol = {});

/// Hermitian PSD square root. Eigenvalues below the rank cutoff are clamped to
/// zero; a negative eigenvalue below -residual_abs * ||A|| raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerance& tol = {});

/// Residuals of the four Penrose equations for a candidate X = pinv(M).
struct PenroseResiduals {
  double axa = 0.0;
  double xax = 0.0;
  double ax_hermitian = 0.0;
  double xa_hermitian = 0.0;

  double max() const;
};

PenroseResiduals penrose_residuals(const ComplexMatrix& m, const ComplexMatrix& x);

/// FNV-1a over the raw bytes of the matrix (dimensions included).
std::uint64_t matrix_hash(const ComplexMatrix& m, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace semiradius
