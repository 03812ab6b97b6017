#include "semiradius/semispace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semiradius {

namespace {

ComplexMatrix block_diag(const ComplexMatrix& a) {
  const auto n = a.rows();
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * a.cols());
  out.topLeftCorner(n, a.cols()) = a;
  out.bottomRightCorner(n, a.cols()) = a;
  return out;
}

}  // namespace

SpacePtr SemiSpace::create(const ComplexMatrix& a, const Tolerance& tol) {
  tol.validate();
  require_finite(a, "weight A");
  require_square(a, "weight A");
  const EigenSystem es = hermitian_eigen(a, tol);
  const Eigen::Index n = a.rows();
  const double top = std::max(0.0, es.values(0));
  const double lowest = es.values(n - 1);
  if (lowest < -tol.residual_abs * std::max(1.0, top)) {
    throw Error(ErrorCode::kNotPSD, "weight A has eigenvalue " + std::to_string(lowest));
  }
  const double cutoff = tol.rank_rel * top;
  Eigen::Index rank = 0;
  while (rank < n && es.values(rank) > cutoff && es.values(rank) > 0.0) ++rank;

  std::shared_ptr<SemiSpace> s(new SemiSpace());
  s->tol_ = tol;
  s->range_basis_ = es.vectors.leftCols(rank);
  s->range_eigenvalues_ = es.values.head(rank);
  const ComplexMatrix& q = s->range_basis_;
  const RealVector& d = s->range_eigenvalues_;
  s->weight_ = rank == n ? hermitian_part(a) : ComplexMatrix(q * d.asDiagonal() * q.adjoint());
  s->weight_pinv_ = q * d.cwiseInverse().asDiagonal() * q.adjoint();
  s->half_ = q * d.cwiseSqrt().asDiagonal() * q.adjoint();
  s->half_pinv_ = q * d.cwiseSqrt().cwiseInverse().asDiagonal() * q.adjoint();
  s->projector_ = q * q.adjoint();
  return s;
}

SpacePtr SemiSpace::identity(Eigen::Index n, const Tolerance& tol) {
  tol.validate();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  std::shared_ptr<SemiSpace> s(new SemiSpace());
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  s->tol_ = tol;
  s->weight_ = id;
  s->weight_pinv_ = id;
  s->half_ = id;
  s->half_pinv_ = id;
  s->projector_ = id;
  s->range_basis_ = id;
  s->range_eigenvalues_ = RealVector::Ones(n);
  return s;
}

SpacePtr SemiSpace::doubled() const {
  std::call_once(doubled_once_, [this] {
    std::shared_ptr<SemiSpace> s(new SemiSpace());
    s->tol_ = tol_;
    s->weight_ = block_diag(weight_);
    s->weight_pinv_ = block_diag(weight_pinv_);
    s->half_ = block_diag(half_);
    s->half_pinv_ = block_diag(half_pinv_);
    s->projector_ = block_diag(projector_);
    s->range_basis_ = block_diag(range_basis_);
    s->range_eigenvalues_.resize(2 * rank());
    s->range_eigenvalues_ << range_eigenvalues_, range_eigenvalues_;
    doubled_ = std::move(s);
  });
  return doubled_;
}

Operator::Operator(SpacePtr space, ComplexMatrix m) : space_(std::move(space)), m_(std::move(m)) {
  if (!space_) throw Error(ErrorCode::kInvalidArgument, "operator without a space");
  require_square(m_, "operator");
  require_finite(m_, "operator");
  if (m_.rows() != space_->dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "operator is " + std::to_string(m_.rows()) +
                                                   "-dimensional, space is " + std::to_string(space_->dim()));
  }
  if (space_->strictly_positive()) {
    admits_adjoint_ = true;
    adjoint_residual_ = 0.0;
    return;
  }
  const ComplexMatrix mstar_a = m_.adjoint() * space_->weight();
  const ComplexMatrix outside = mstar_a - space_->range_projector() * mstar_a;
  adjoint_residual_ = spectral_norm(outside) / std::max(1.0, spectral_norm(mstar_a));
  admits_adjoint_ = adjoint_residual_ <= space_->tolerance().residual_abs;
}

Operator Operator::identity(const SpacePtr& space) {
  return Operator(space, ComplexMatrix::Identity(space->dim(), space->dim()));
}

Operator Operator::zero(const SpacePtr& space) {
  return Operator(space, ComplexMatrix::Zero(space->dim(), space->dim()));
}

void require_same_space(const Operator& a, const Operator& b) {
  if (a.space() != b.space()) throw Error(ErrorCode::kSpaceMismatch, "operators live on different spaces");
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return Operator(a.space(), a.matrix() + b.matrix());
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return Operator(a.space(), a.matrix() - b.matrix());
}

Operator operator-(const Operator& a) { return Operator(a.space(), -a.matrix()); }

Operator operator*(Complex c, const Operator& a) { return Operator(a.space(), c * a.matrix()); }

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return Operator(a.space(), a.matrix() * b.matrix());
}

Complex semi_inner(const ComplexVector& x, const ComplexVector& y, const SemiSpace& space) {
  if (x.size() != space.dim() || y.size() != space.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector length does not match the space");
  }
  return y.dot(space.weight() * x);  // y* (A x)
}

double vec_seminorm(const ComplexVector& x, const SemiSpace& space) {
  return std::sqrt(std::max(0.0, semi_inner(x, x, space).real()));
}

ComplexMatrix compression(const Operator& t) {
  const SemiSpace& s = *t.space();
  return s.half() * t.matrix() * s.half_pinv();
}

double op_seminorm(const Operator& t) { return spectral_norm(compression(t)); }

double op_seminorm_generalized(const Operator& t) {
  const SemiSpace& s = *t.space();
  if (s.rank() == 0) return 0.0;
  // Basis G = Q_r D^{-1/2} makes the constraint x* A x = 1 Euclidean.
  const ComplexMatrix g = s.range_basis() * s.range_eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  const ComplexMatrix mg = t.matrix() * g;
  const ComplexMatrix reduced = mg.adjoint() * (s.weight() * mg);
  return std::sqrt(std::max(0.0, lambda_max_unchecked(reduced)));
}

Operator sharp(const Operator& t) {
  if (!t.admits_adjoint()) {
    throw Error(ErrorCode::kNoAdjoint, "range criterion residual " + std::to_string(t.adjoint_residual()));
  }
  const SemiSpace& s = *t.space();
  return Operator(t.space(), s.weight_pinv() * t.matrix().adjoint() * s.weight());
}

Operator re_a(const Operator& t) { return Complex(0.5) * (t + sharp(t)); }

Operator im_a(const Operator& t) { return Complex(0.0, -0.5) * (t - sharp(t)); }

Classification classify(const Operator& t) {
  const SemiSpace& s = *t.space();
  const double tol = s.tolerance().residual_abs;
  Classification c;
  const ComplexMatrix at = s.weight() * t.matrix();
  const double at_scale = std::max(1.0, spectral_norm(at));
  c.is_a_selfadjoint = spectral_norm(at - at.adjoint()) <= tol * at_scale;
  if (c.is_a_selfadjoint) {
    const RealVector ev = hermitian_eigenvalues(at, Tolerance{s.tolerance().rank_rel, 1.0});
    c.is_a_positive = ev(ev.size() - 1) >= -tol * at_scale;
  }
  if (t.admits_adjoint()) {
    // ||Ux||_A = ||x||_A for all x  <=>  U* A U = A, and likewise for U^#A.
    const double a_scale = std::max(1.0, spectral_norm(s.weight()));
    const ComplexMatrix& u = t.matrix();
    const ComplexMatrix us = sharp(t).matrix();
    const double r1 = spectral_norm(u.adjoint() * s.weight() * u - s.weight());
    const double r2 = spectral_norm(us.adjoint() * s.weight() * us - s.weight());
    c.is_a_unitary = std::max(r1, r2) <= tol * a_scale;
  }
  return c;
}

bool approx_equal_a(const Operator& x, const Operator& y, double rel) {
  const double nx = op_seminorm(x);
  const double ny = op_seminorm(y);
  return op_seminorm(x - y) <= rel * std::max({1.0, nx, ny});
}

}  // namespace semiradius
