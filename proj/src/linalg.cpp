#include "semiradius/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

namespace semiradius {

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(rank_rel < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rank_rel must lie in (0, 1)");
  }
  if (!(residual_abs > 0.0) || !std::isfinite(residual_abs)) {
    throw Error(ErrorCode::kInvalidArgument, "residual_abs must be finite and positive");
  }
}

Tolerance Tolerance::from_env() {
  Tolerance tol;
  if (const char* env = std::getenv("SEMIRADIUS_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw Error(ErrorCode::kInvalidArgument, std::string("SEMIRADIUS_TOL is not a number: ") + env);
    }
    tol.residual_abs = value;
  }
  tol.validate();
  return tol;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!all_finite(m)) throw Error(ErrorCode::kNonFinite, std::string(what) + " has non-finite entries");
}

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kNotSquare, std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
  }
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  // sigma_max^2 is the top eigenvalue of the smaller Gram matrix.
  const ComplexMatrix gram = m.rows() >= m.cols() ? ComplexMatrix(m.adjoint() * m) : ComplexMatrix(m * m.adjoint());
  return std::sqrt(std::max(0.0, lambda_max_unchecked(gram)));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

ComplexMatrix checked_symmetrize(const ComplexMatrix& h, const Tolerance& tol) {
  require_finite(h, "Hermitian input");
  require_square(h, "Hermitian input");
  const double asym = spectral_norm(h - h.adjoint());
  const double scale = std::max(1.0, spectral_norm(h));
  if (asym > tol.residual_abs * scale) {
    throw Error(ErrorCode::kNotHermitian, "||H - H*|| = " + std::to_string(asym));
  }
  return hermitian_part(h);
}

}  // namespace

EigenSystem hermitian_eigen(const ComplexMatrix& h, const Tolerance& tol) {
  const ComplexMatrix sym = checked_symmetrize(h, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const auto n = sym.rows();
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h, const Tolerance& tol) {
  const ComplexMatrix sym = checked_symmetrize(h, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

double lambda_max_unchecked(const ComplexMatrix& h) {
  if (h.rows() == 1) return h(0, 0).real();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(h.rows() - 1);
}

ComplexMatrix pinv(const ComplexMatrix& m, const Tolerance& tol) {
  require_finite(m, "pinv input");
  if (m.size() == 0) return ComplexMatrix(m.cols(), m.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? tol.rank_rel * s(0) : 0.0;
  RealVector inv = RealVector::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff && s(k) > 0.0) inv(k) = 1.0 / s(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerance& tol) {
  const EigenSystem es = hermitian_eigen(a, tol);
  const double top = std::max(0.0, es.values.size() > 0 ? es.values(0) : 0.0);
  const double lowest = es.values.size() > 0 ? es.values(es.values.size() - 1) : 0.0;
  if (lowest < -tol.residual_abs * std::max(1.0, top)) {
    throw Error(ErrorCode::kNotPSD, "eigenvalue " + std::to_string(lowest));
  }
  RealVector root(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double v = es.values(k);
    root(k) = v > tol.rank_rel * top ? std::sqrt(v) : 0.0;
  }
  return es.vectors * root.asDiagonal() * es.vectors.adjoint();
}

double PenroseResiduals::max() const { return std::max({axa, xax, ax_hermitian, xa_hermitian}); }

PenroseResiduals penrose_residuals(const ComplexMatrix& m, const ComplexMatrix& x) {
  const ComplexMatrix mx = m * x;
  const ComplexMatrix xm = x * m;
  PenroseResiduals r;
  r.axa = spectral_norm(mx * m - m);
  r.xax = spectral_norm(xm * x - x);
  r.ax_hermitian = spectral_norm(mx - mx.adjoint());
  r.xa_hermitian = spectral_norm(xm - xm.adjoint());
  return r;
}

std::uint64_t matrix_hash(const ComplexMatrix& m, std::uint64_t seed) {
  std::uint64_t h = seed;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {static_cast<std::int64_t>(m.rows()), static_cast<std::int64_t>(m.cols())};
  mix(dims, sizeof(dims));
  mix(m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  return h;
}

}  // namespace semiradius
