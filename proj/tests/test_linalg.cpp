#include <doctest.h>

#include <cstdlib>

#include "semiradius/linalg.hpp"
#include "support.hpp"

using namespace semiradius;
using namespace testing_support;

TEST_SUITE("linalg") {
  TEST_CASE("hermitian_eigen on small fixed matrices") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const EigenSystem e = hermitian_eigen(d);
    CHECK(e.values(0) == doctest::Approx(3.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(1, 1)) == doctest::Approx(1.0));

    ComplexMatrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const RealVector v = hermitian_eigenvalues(x);
    CHECK(v(0) == doctest::Approx(1.0));
    CHECK(v(1) == doctest::Approx(-1.0));
  }

  TEST_CASE("hermitian_eigen reconstruction and unitarity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix h = hermitian(5, rng);
      const EigenSystem e = hermitian_eigen(h);
      const ComplexMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
      CHECK(svd_norm(rec - h) <= 1e-10 * svd_norm(h));
      CHECK(svd_norm(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(5, 5)) <= 1e-10);
      for (Eigen::Index i = 0; i + 1 < e.values.size(); ++i) CHECK(e.values(i) >= e.values(i + 1));
    }
  }

  TEST_CASE("hermitian_eigen is basis independent") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix h = hermitian(6, rng);
      const ComplexMatrix u = random_unitary(6, rng);
      const RealVector a = hermitian_eigenvalues(h);
      const RealVector b = hermitian_eigenvalues(u.adjoint() * h * u);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-9 * svd_norm(h));
    }
  }

  TEST_CASE("hermitian_eigen rejects bad input") {
    ComplexMatrix j = ComplexMatrix::Zero(2, 2);
    j(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigen(j), Error);
    try {
      hermitian_eigen(j);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotHermitian);
    }
    ComplexMatrix n = ComplexMatrix::Identity(2, 2);
    n(0, 0) = std::numeric_limits<double>::quiet_NaN();
    try {
      hermitian_eigen(n);
      FAIL("expected NonFinite");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNonFinite);
    }
  }

  TEST_CASE("pinv fixed examples") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    const ComplexMatrix p = pinv(d);
    CHECK(std::abs(p(0, 0) - 0.5) < 1e-15);
    CHECK(p.cwiseAbs().sum() == doctest::Approx(0.5));
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    CHECK(svd_norm(pinv(id) - id) < 1e-15);
  }

  TEST_CASE("pinv satisfies the Penrose equations and is an involution") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 6);
      const Eigen::Index c = 1 + static_cast<Eigen::Index>(rng() % 6);
      const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng() % std::min(r, c));
      const ComplexMatrix m = gaussian(r, k, rng) * gaussian(k, c, rng);
      const ComplexMatrix x = pinv(m);
      const double scale = std::max(1.0, svd_norm(m));
      CHECK(penrose_residuals(m, x).max() <= 1e-10 * scale);
      CHECK(svd_norm(pinv(x) - m) <= 1e-8 * scale);
      CHECK(svd_norm(x - min_norm_solve(m, ComplexMatrix::Identity(r, r))) <= 1e-8 * std::max(1.0, svd_norm(x)));
    }
  }

  TEST_CASE("pinv of a non-finite matrix throws") {
    ComplexMatrix m = ComplexMatrix::Ones(2, 3);
    m(1, 2) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(pinv(m), Error);
  }

  TEST_CASE("psd_sqrt") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const ComplexMatrix r = psd_sqrt(d);
    CHECK(std::abs(r(0, 0) - 2.0) < 1e-14);
    CHECK(std::abs(r(1, 1) - 3.0) < 1e-14);
    CHECK(svd_norm(psd_sqrt(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)) < 1e-14);

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix g = gaussian(5, 5, rng);
      const ComplexMatrix a = g.adjoint() * g;
      const ComplexMatrix s = psd_sqrt(a);
      CHECK(svd_norm(s * s - a) <= 1e-9 * svd_norm(a));
      const ComplexMatrix u = random_unitary(5, rng);
      CHECK(svd_norm(psd_sqrt(u.adjoint() * a * u) - u.adjoint() * s * u) <= 1e-8 * std::max(1.0, svd_norm(s)));
    }
    ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
    neg(1, 1) = -1.0;
    try {
      psd_sqrt(neg);
      FAIL("expected NotPSD");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotPSD);
    }
  }

  TEST_CASE("spectral_norm matches SVD") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
      const ComplexMatrix m = gaussian(1 + rng() % 7, 1 + rng() % 7, rng);
      CHECK(spectral_norm(m) == doctest::Approx(svd_norm(m)).epsilon(1e-10));
    }
  }

  TEST_CASE("Tolerance validation and environment override") {
    CHECK_NOTHROW(Tolerance{}.validate());
    CHECK_THROWS_AS((Tolerance{0.0, 1e-9}.validate()), Error);
    CHECK_THROWS_AS((Tolerance{1.5, 1e-9}.validate()), Error);
    CHECK_THROWS_AS((Tolerance{1e-10, -1.0}.validate()), Error);
    ::setenv("SEMIRADIUS_TOL", "1e-6", 1);
    CHECK(Tolerance::from_env().residual_abs == doctest::Approx(1e-6));
    ::setenv("SEMIRADIUS_TOL", "junk", 1);
    CHECK_THROWS_AS(Tolerance::from_env(), Error);
    ::unsetenv("SEMIRADIUS_TOL");
    CHECK(Tolerance::from_env().residual_abs == doctest::Approx(1e-9));
  }

  TEST_CASE("matrix_hash separates shapes and values") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 3);
    ComplexMatrix b = ComplexMatrix::Zero(3, 2);
    CHECK(matrix_hash(a) != matrix_hash(b));
    ComplexMatrix c = a;
    c(1, 1) = 1e-300;
    CHECK(matrix_hash(a) != matrix_hash(c));
    CHECK(matrix_hash(a) == matrix_hash(ComplexMatrix::Zero(2, 3)));
  }
}
