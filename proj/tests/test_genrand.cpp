#include <doctest.h>

#include <set>

#include "semiradius/genrand.hpp"
#include "support.hpp"

using namespace semiradius;
using namespace testing_support;

TEST_SUITE("genrand") {
  TEST_CASE("GenConfig validation") {
    GenConfig ok;
    CHECK_NOTHROW(ok.validate());
    GenConfig bad = ok;
    bad.a_rank = 3;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ok;
    bad.dim = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ok;
    bad.entry_scale = -1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ok;
    bad.entry_scale = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bad.validate(), Error);
  }

  TEST_CASE("gen_space rank and spectrum") {
    GenConfig cfg;
    cfg.seed = 5;
    cfg.dim = 3;
    cfg.a_rank = 3;
    CHECK(gen_space(cfg)->strictly_positive());
    cfg.a_rank = 1;
    const SpacePtr s = gen_space(cfg);
    CHECK_FALSE(s->strictly_positive());
    CHECK(s->range_projector().trace().real() == doctest::Approx(1.0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      cfg.seed = seed;
      cfg.dim = 4;
      cfg.a_rank = 3;
      cfg.entry_scale = 2.0;
      const SpacePtr t = gen_space(cfg);
      for (Eigen::Index k = 0; k < t->range_eigenvalues().size(); ++k) {
        CHECK(t->range_eigenvalues()(k) >= 0.2 - 1e-9);
        CHECK(t->range_eigenvalues()(k) <= 20.0 + 1e-9);
      }
    }
    cfg.space = SpaceKind::kIdentity;
    cfg.a_rank = 4;
    CHECK(gen_space(cfg)->weight() == ComplexMatrix::Identity(4, 4));
  }

  TEST_CASE("generation is deterministic") {
    GenConfig cfg;
    cfg.seed = 77;
    cfg.dim = 4;
    cfg.a_rank = 2;
    for (Ensemble e : {Ensemble::kGinibre, Ensemble::kHermitian, Ensemble::kASelfadjoint, Ensemble::kAUnitary,
                       Ensemble::kAdmissibleGeneral}) {
      cfg.ensemble = e;
      const Instance a = gen_instance(cfg, InstanceKind::kGeneral, 3);
      const Instance b = gen_instance(cfg, InstanceKind::kGeneral, 3);
      CHECK(a.space->weight() == b.space->weight());
      for (std::size_t k = 0; k < 4; ++k) CHECK(a.ops[k].matrix() == b.ops[k].matrix());
      CHECK(a.digest == b.digest);
      CHECK(a.phase == b.phase);
    }
    GenConfig other = cfg;
    other.seed = 78;
    CHECK(gen_instance(cfg, InstanceKind::kGeneral).digest != gen_instance(other, InstanceKind::kGeneral).digest);
  }

  TEST_CASE("rank-deficient draws satisfy the range criterion") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    const SpacePtr s = SemiSpace::create(a);
    GenConfig cfg;
    cfg.dim = 2;
    cfg.a_rank = 1;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      cfg.seed = seed;
      const Operator t = gen_operator(s, cfg);
      const ComplexMatrix ta = t.matrix().adjoint() * a;
      CHECK(std::abs(ta(1, 0)) < 1e-14);
    }
  }

  TEST_CASE("every ensemble satisfies its predicate") {
    int count = 0;
    for (int n = 1; n <= 6; ++n) {
      for (int r : {n, std::max(1, n - 1), 1}) {
        for (Ensemble e : {Ensemble::kGinibre, Ensemble::kHermitian, Ensemble::kASelfadjoint, Ensemble::kAUnitary,
                           Ensemble::kAdmissibleGeneral}) {
          GenConfig cfg;
          cfg.seed = 1000 + static_cast<std::uint64_t>(count);
          cfg.dim = n;
          cfg.a_rank = r;
          cfg.ensemble = e;
          const SpacePtr s = gen_space(cfg);
          const Operator t = gen_operator(s, cfg, 1);
          CHECK(t.admits_adjoint());
          const Classification c = classify(t);
          if (e == Ensemble::kASelfadjoint) CHECK(c.is_a_selfadjoint);
          if (e == Ensemble::kAUnitary) CHECK(c.is_a_unitary);
          if (e == Ensemble::kHermitian) CHECK(svd_norm(t.matrix() - t.matrix().adjoint()) < 1e-12);
          ++count;
        }
      }
    }
  }

  TEST_CASE("random A-unitary preserves the seminorm") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      GenConfig cfg;
      cfg.seed = 40 + trial;
      cfg.dim = 4;
      cfg.a_rank = 1 + trial % 4;
      const SpacePtr s = gen_space(cfg);
      const Operator u = random_a_unitary(s, rng);
      const Operator us = sharp(u);
      for (int k = 0; k < 5; ++k) {
        const ComplexVector x = gaussian(4, 1, rng);
        CHECK(vec_seminorm(u.matrix() * x, *s) == doctest::Approx(vec_seminorm(x, *s)).epsilon(1e-9));
        CHECK(vec_seminorm(us.matrix() * x, *s) == doctest::Approx(vec_seminorm(x, *s)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("corollary instances have vanishing products") {
    for (int n = 1; n <= 6; ++n) {
      for (CorollaryVariant v : {CorollaryVariant::kA, CorollaryVariant::kB}) {
        GenConfig cfg;
        cfg.seed = 500 + n;
        cfg.dim = n;
        cfg.a_rank = n;
        const SpacePtr s = gen_space(cfg);
        const auto ops = gen_corollary_pair(s, v, cfg);
        auto small = [](const Operator& p) { return op_seminorm(p) <= 1e-10; };
        if (v == CorollaryVariant::kA) {
          CHECK(small(sharp(ops[0]) * ops[1]));
          CHECK(small(ops[3] * sharp(ops[2])));
        } else {
          CHECK(small(sharp(ops[0]) * ops[2]));
          CHECK(small(sharp(ops[3]) * ops[1]));
        }
      }
    }
    GenConfig cfg;
    cfg.dim = 3;
    cfg.a_rank = 2;
    try {
      gen_corollary_pair(gen_space(cfg), CorollaryVariant::kA, cfg);
      FAIL("expected RequiresStrictA");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRequiresStrictA);
    }
  }

  TEST_CASE("sharp seed instance") {
    GenConfig cfg;
    cfg.dim = 3;
    cfg.a_rank = 2;
    const Instance in = gen_instance(cfg, InstanceKind::kSharpSeed);
    CHECK(in.ops[0].matrix() == ComplexMatrix::Identity(3, 3));
    for (std::size_t k = 1; k < 4; ++k) CHECK(in.ops[k].matrix().isZero(0.0));
  }

  TEST_CASE("parsing round trips") {
    for (Ensemble e : {Ensemble::kGinibre, Ensemble::kHermitian, Ensemble::kASelfadjoint, Ensemble::kAUnitary,
                       Ensemble::kAdmissibleGeneral})
      CHECK(parse_ensemble(to_string(e)) == e);
    for (InstanceKind k : {InstanceKind::kGeneral, InstanceKind::kCorollaryA, InstanceKind::kCorollaryB,
                           InstanceKind::kSharpSeed})
      CHECK(parse_instance_kind(to_string(k)) == k);
    CHECK(RankRule::parse("full").resolve(4) == 4);
    CHECK(RankRule::parse("full-1").resolve(4) == 3);
    CHECK(RankRule::parse("full-1").resolve(1) == 1);
    CHECK(RankRule::parse("2").resolve(1) == 1);
    CHECK(RankRule::parse("2").to_string() == "2");
    CHECK_THROWS_AS(RankRule::parse("0"), Error);
    CHECK_THROWS_AS(RankRule::parse("most"), Error);
    CHECK_THROWS_AS(parse_ensemble("wishart"), Error);
    CHECK_THROWS_AS(Profile::named("huge"), Error);
  }

  TEST_CASE("standard profile coverage") {
    InstanceStream st{9, Profile::named("standard"), 1000};
    std::set<int> dims;
    std::set<std::pair<int, int>> shapes;
    std::set<Ensemble> ens;
    int strict = 0;
    int degenerate = 0;
    for (std::size_t k = 0; k < st.count; ++k) {
      const GenConfig c = st.config_at(k);
      dims.insert(c.dim);
      shapes.insert({c.dim, c.a_rank});
      ens.insert(c.ensemble);
      (c.a_rank == c.dim ? strict : degenerate)++;
    }
    CHECK(dims == std::set<int>{1, 2, 3, 4, 6});
    CHECK(ens.size() == 5);
    CHECK(shapes.contains({6, 5}));
    CHECK(shapes.contains({6, 1}));
    CHECK(strict >= 100);
    CHECK(degenerate >= 100);
    CHECK(st.config_at(17) == InstanceStream{9, Profile::named("standard"), 5}.config_at(17));
  }
}
