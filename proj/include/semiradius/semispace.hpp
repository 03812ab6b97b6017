#pragma once

// The A-semi-Hilbertian calculus: a positive semidefinite weight A induces
// <x, y>_A = <Ax, y>, the seminorm ||x||_A, the operator seminorm ||T||_A and,
// for operators whose T*A has range inside R(A), the distinguished A-adjoint
// T^#A = A^+ T* A.

#include <memory>
#include <mutex>

#include "semiradius/linalg.hpp"

namespace semiradius {

class SemiSpace;
using SpacePtr = std::shared_ptr<const SemiSpace>;

/// A positive semidefinite weight with its factorizations cached. Immutable
/// after construction and safe to share between threads.
class SemiSpace {
 public:
  /// Validates A (finite, square, Hermitian, PSD) and caches A^+, A^{1/2},
  /// (A^{1/2})^+, the range projector and an eigenbasis of R(A).
  static SpacePtr create(const ComplexMatrix& a, const Tolerance& tol = {});
  static SpacePtr identity(Eigen::Index n, const Tolerance& tol = {});

  Eigen::Index dim() const { return weight_.rows(); }
  const ComplexMatrix& weight() const { return weight_; }
  const ComplexMatrix& weight_pinv() const { return weight_pinv_; }
  const ComplexMatrix& half() const { return half_; }
  const ComplexMatrix& half_pinv() const { return half_pinv_; }
  const ComplexMatrix& range_projector() const { return projector_; }
  /// Orthonormal basis of R(A) (n x rank) and the matching eigenvalues.
  const ComplexMatrix& range_basis() const { return range_basis_; }
  const RealVector& range_eigenvalues() const { return range_eigenvalues_; }
  Eigen::Index rank() const { return range_basis_.cols(); }
  bool strictly_positive() const { return rank() == dim(); }
  const Tolerance& tolerance() const { return tol_; }

  /// diag(A, A), assembled from the cached factors of this space. Built once.
  SpacePtr doubled() const;

 private:
  SemiSpace() = default;

  ComplexMatrix weight_;
  ComplexMatrix weight_pinv_;
  ComplexMatrix half_;
  ComplexMatrix half_pinv_;
  ComplexMatrix projector_;
  ComplexMatrix range_basis_;
  RealVector range_eigenvalues_;
  Tolerance tol_;

  mutable std::once_flag doubled_once_;
  mutable SpacePtr doubled_;
};

/// A square matrix bound to a SemiSpace. Admissibility (existence of an
/// A-adjoint) is decided once at construction by the range criterion
/// ||(I - P) M* A|| <= residual_abs * max(1, ||M* A||).
class Operator {
 public:
  Operator(SpacePtr space, ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  const SpacePtr& space() const { return space_; }
  Eigen::Index dim() const { return m_.rows(); }
  bool admits_adjoint() const { return admits_adjoint_; }
  /// ||(I - P) M* A|| / max(1, ||M* A||), the quantity the criterion compares.
  double adjoint_residual() const { return adjoint_residual_; }

  static Operator identity(const SpacePtr& space);
  static Operator zero(const SpacePtr& space);

 private:
  SpacePtr space_;
  ComplexMatrix m_;
  bool admits_adjoint_ = false;
  double adjoint_residual_ = 0.0;
};

void require_same_space(const Operator& a, const Operator& b);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator-(const Operator& a);
Operator operator*(Complex c, const Operator& a);
/// Composition a∘b.
Operator operator*(const Operator& a, const Operator& b);

Complex semi_inner(const ComplexVector& x, const ComplexVector& y, const SemiSpace& space);
double vec_seminorm(const ComplexVector& x, const SemiSpace& space);

/// A^{1/2} M (A^{1/2})^+ : the operator seen in the coordinates where the
/// A-seminorm is Euclidean.
ComplexMatrix compression(const Operator& t);

/// ||T||_A as the largest singular value of the compression.
double op_seminorm(const Operator& t);

/// ||T||_A as sqrt of the top generalized eigenvalue of M* A M v = lambda A v
/// restricted to R(A). Independent route used to cross-check op_seminorm.
double op_seminorm_generalized(const Operator& t);

/// A^+ M* A. Throws NoAdjoint when the range criterion fails.
Operator sharp(const Operator& t);
Operator re_a(const Operator& t);
Operator im_a(const Operator& t);

struct Classification {
  bool is_a_selfadjoint = false;
  bool is_a_positive = false;
  bool is_a_unitary = false;
};

Classification classify(const Operator& t);

/// X ≈ Y in the A-seminorm sense: ||X - Y||_A <= rel * max(1, ||X||_A, ||Y||_A).
bool approx_equal_a(const Operator& x, const Operator& y, double rel);

}  // namespace semiradius
