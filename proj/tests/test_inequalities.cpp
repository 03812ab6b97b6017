#include <doctest.h>

#include <set>

#include "semiradius/inequalities.hpp"
#include "support.hpp"

using namespace semiradius;
using namespace testing_support;

namespace {

ComplexMatrix jordan() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix block(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const ComplexMatrix& d) {
  const auto n = a.rows();
  ComplexMatrix m(2 * n, 2 * n);
  m << a, b, c, d;
  return m;
}

Instance classical(const std::vector<ComplexMatrix>& ms) {
  const SpacePtr s = SemiSpace::identity(ms.front().rows());
  std::vector<Operator> ops;
  for (const auto& m : ms) ops.emplace_back(s, m);
  return make_instance(s, ops);
}

}  // namespace

TEST_SUITE("inequalities") {
  TEST_CASE("registry contents") {
    const Registry& reg = Registry::standard();
    const auto ids = reg.ids();
    CHECK(ids.size() == reg.checks().size());
    std::set<std::string> unique(ids.begin(), ids.end());
    CHECK(unique.size() == ids.size());
    for (const char* id : {"ineq1-lower", "ineq1-upper", "ineq0-identities", "selfadjoint-radius", "lem0001-i",
                           "lem0001-ii", "lem0001-iii", "lem0001-iv", "lem0002-lower", "lem0002-upper",
                           "lem00003-pinch", "l001-diag", "l001-offdiag", "eq01-lower", "eq01-upper", "l002-identity",
                           "t002-upper", "diagmax-halfsum", "four-term-lower", "scalar-max-identity",
                           "scalar-min-identity", "minmax-lemma-upper", "minmax-lemma-lower", "lem0004-max",
                           "lem0004-min", "thm20005-alpha", "thm20005-min-alpha-beta", "thm20005-beta-proof",
                           "secondrow-zero-lower", "thm20006-min-alpha-beta", "cor-orthogonal-a", "cor-orthogonal-b",
                           "refine1-block", "refine1-scalar", "refine1-scalar-abs", "refine2-block", "refine2-scalar"}) {
      CHECK_MESSAGE(reg.contains(id), id);
    }
    CHECK(reg.get("thm20005").id == "thm20005-min-alpha-beta");
    CHECK(reg.get("thm20006").id == "thm20006-min-alpha-beta");
    CHECK(reg.get("thm20005-alpha").mode == CheckMode::kAssert);
    CHECK(reg.get("thm20005").mode == CheckMode::kAudit);
    CHECK(reg.get("thm20006").mode == CheckMode::kAudit);
    CHECK(reg.get("lem0001-ii").requires_strict_a);
    CHECK_FALSE(reg.get("lem0001-i").requires_strict_a);
    try {
      reg.get("nosuch");
      FAIL("expected UnknownCheckId");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnknownCheckId);
    }
    CHECK(reg.resolve({"thm20005", "ineq1-lower", "thm20005-min-alpha-beta"}) ==
          std::vector<std::string>{"ineq1-lower", "thm20005-min-alpha-beta"});
  }

  TEST_CASE("eq01-lower on the Jordan block") {
    const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    const Instance in = classical({jordan(), z});
    const CheckResult r = evaluate("eq01-lower", in);
    CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(r.slack) <= 1e-10);
    CHECK(r.holds);
    CHECK(std::abs(dense_grid_radius(block(jordan(), z, z, -jordan())) - 0.5) < 1e-9);
  }

  TEST_CASE("sharp seed makes thm20005 and thm20006 tight") {
    for (int n = 1; n <= 4; ++n) {
      GenConfig cfg;
      cfg.dim = n;
      cfg.a_rank = n;
      cfg.seed = static_cast<std::uint64_t>(n);
      const Instance in = gen_instance(cfg, InstanceKind::kSharpSeed);
      for (const char* id : {"thm20005", "thm20006", "thm20005-alpha", "thm20005-beta-proof"}) {
        const CheckResult r = evaluate(id, in);
        CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("scalar identities") {
    const Sides mx = scalar_max_identity(3, 5);
    CHECK(mx.lhs == 4.0);
    CHECK(mx.rhs == 4.0);
    const Sides mn = scalar_min_identity(3, 5);
    CHECK(mn.lhs == 4.0);
    CHECK(mn.rhs == 4.0);
  }

  TEST_CASE("requirement errors") {
    GenConfig cfg;
    cfg.dim = 3;
    cfg.a_rank = 2;
    const Instance degenerate = gen_instance(cfg, InstanceKind::kGeneral);
    try {
      evaluate("lem0001-ii", degenerate);
      FAIL("expected RequiresStrictA");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRequiresStrictA);
    }
    const Instance one = make_instance(degenerate.space, {degenerate.ops[0]});
    try {
      evaluate("thm20005-alpha", one);
      FAIL("expected ArityMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kArityMismatch);
    }
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    const SpacePtr s = SemiSpace::create(a);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    const Instance inadmissible = make_instance(s, {Operator(s, bad)});
    try {
      evaluate("ineq1-lower", inadmissible);
      FAIL("expected NoAdjoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoAdjoint);
    }
    const auto sel = evaluate_selection({"ineq1-lower", "lem0001-ii"}, degenerate);
    CHECK_FALSE(sel[0].skipped);
    CHECK(sel[1].skipped);
    CHECK(sel[1].skip_reason == "requires A > 0");
  }

  TEST_CASE("slack tolerance") {
    CHECK(slack_tolerance(0.0, 0.0) == doctest::Approx(1e-8));
    CHECK(slack_tolerance(-50.0, 3.0) == doctest::Approx(5e-7));
  }

  TEST_CASE("check sides against independent classical evaluation") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 2 + trial % 2;
      std::vector<ComplexMatrix> ms;
      for (int k = 0; k < 4; ++k) ms.push_back(gaussian(n, n, rng));
      const Instance in = classical(ms);
      const ComplexMatrix z = ComplexMatrix::Zero(n, n);
      const Complex i(0, 1);
      const double w1 = dense_grid_radius(ms[0]);
      const double w4 = dense_grid_radius(ms[3]);
      const double wfull = dense_grid_radius(block(ms[0], ms[1], ms[2], ms[3]));
      const double tol = 1e-7;

      CheckResult r = evaluate("l001-diag", in);
      CHECK(std::abs(r.lhs - std::max(w1, w4)) < tol);
      CHECK(std::abs(r.rhs - wfull) < tol);
      r = evaluate("l001-offdiag", in);
      CHECK(std::abs(r.lhs - dense_grid_radius(block(z, ms[1], ms[2], z))) < tol);
      r = evaluate("l002-identity", in);
      CHECK(std::abs(r.lhs - dense_grid_radius(block(ms[1], -ms[0], ms[0], ms[1]))) < tol);
      CHECK(std::abs(r.rhs - std::max(dense_grid_radius(ms[0] + i * ms[1]), dense_grid_radius(ms[0] - i * ms[1]))) < tol);
      r = evaluate("lem00003-pinch", in);
      CHECK(std::abs(r.lhs - svd_norm(block(ms[0], ms[1], ms[2], ms[3]))) < 1e-10);
      r = evaluate("ineq1-upper", in);
      CHECK(std::abs(r.lhs - w1) < tol);
      CHECK(std::abs(r.rhs - svd_norm(ms[0])) < 1e-10);
      r = evaluate("thm20005-beta-proof", in);
      auto rms = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        return std::sqrt((std::pow(svd_norm(x + y), 2) + std::pow(svd_norm(x - y), 2)) / 2);
      };
      CHECK(std::abs(r.rhs - (rms(ms[0], ms[2]) + rms(ms[1], ms[3]))) < 1e-9);
      r = evaluate("thm20005", in);
      const double alpha = rms(ms[0], ms[1]) + rms(ms[3], ms[2]);
      const double beta = rms(ms[0], ms[2]) + rms(ms[1], ms[3].adjoint());
      CHECK(std::abs(r.rhs - std::min(alpha, beta)) < 1e-9);
      r = evaluate("secondrow-zero-lower", in);
      CHECK(std::abs(r.rhs - dense_grid_radius(block(ms[0], ms[1], z, z))) < tol);
    }
  }

  TEST_CASE("refinement dominance") {
    InstanceStream st{5, Profile::named("standard"), 150};
    int exercised = 0;
    for (std::size_t k = 0; k < st.count; ++k) {
      const Instance in = st.at(k);
      const Operator& t = in.ops[0];
      const Operator ts = sharp(t);
      if (op_seminorm(re_a(ts)) < op_seminorm(im_a(ts))) continue;
      ++exercised;
      CHECK(evaluate("refine1-scalar", in).lhs >= op_seminorm(t) / 2 - 1e-12);
    }
    CHECK(exercised >= 20);
  }

  TEST_CASE("run_registry on classical instances") {
    Profile p = Profile::named("classical");
    p.dims = {2, 3, 4};
    InstanceStream st{42, p, 100};
    const VerificationReport rep = run_registry(st, {});
    CHECK(rep.assert_violations() == 0);
    for (const CheckAggregate& c : rep.checks) {
      CHECK(c.instances == 100);
      CHECK(c.instances == c.passes + c.violations + c.skipped);
    }
    CHECK(rep.records.size() == 100 * rep.checks.size());
    CHECK_FALSE(rep.notes.empty());
  }

  TEST_CASE("identity checks bind") {
    InstanceStream st{3, Profile::named("standard"), 40};
    const VerificationReport rep = run_registry(st, {"lem0001-i"});
    REQUIRE(rep.checks.size() == 1);
    REQUIRE(rep.checks[0].min_slack.has_value());
    CHECK(std::abs(*rep.checks[0].min_slack) <= 1e-8);
    CHECK(rep.checks[0].violations == 0);
  }

  TEST_CASE("parallel run equals serial run") {
    InstanceStream st{8, Profile::named("standard"), 24};
    const VerificationReport a = run_registry(st, {});
    const VerificationReport b = run_registry_serial(st, {});
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      CHECK(a.records[k].check_id == b.records[k].check_id);
      CHECK(a.records[k].counter == b.records[k].counter);
      CHECK(a.records[k].slack == b.records[k].slack);
    }
  }

  TEST_CASE("aggregation of an empty violation list") {
    const VerificationReport rep = aggregate({"ineq1-lower"}, {}, true);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].violations == 0);
    CHECK(rep.checks[0].instances == 0);
    CHECK(rep.assert_violations() == 0);
  }
}
