#include <doctest.h>

#include "semiradius/blocks.hpp"
#include "semiradius/genrand.hpp"
#include "support.hpp"

using namespace semiradius;
using namespace testing_support;

namespace {

Instance inst_of(int n, int r, std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.dim = n;
  cfg.a_rank = r;
  return gen_instance(cfg, InstanceKind::kGeneral);
}

double wa(const Operator& t) { return a_numerical_radius(t).value; }

bool same(const Operator& x, const Operator& y) { return approx_equal_a(x, y, 1e-12); }

}  // namespace

TEST_SUITE("blocks") {
  TEST_CASE("assemble and split") {
    const Instance in = inst_of(3, 2, 1);
    const Block2x2 b = assemble(in.ops[0], in.ops[1], in.ops[2], in.ops[3]);
    const ComplexMatrix& f = b.flattened().matrix();
    CHECK(f.rows() == 6);
    CHECK(f.block(0, 3, 3, 3) == in.ops[1].matrix());
    CHECK(f.block(3, 0, 3, 3) == in.ops[2].matrix());
    CHECK(b.flattened().space() == in.space->doubled());
    CHECK(in.space->doubled() == in.space->doubled());
    const Block2x2 back = split(b.flattened(), in.space);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(back.block(r, c).matrix() == b.block(r, c).matrix());
    const SpacePtr other = SemiSpace::identity(3);
    try {
      assemble(in.ops[0], in.ops[1], in.ops[2], Operator::zero(other));
      FAIL("expected SpaceMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSpaceMismatch);
    }
  }

  TEST_CASE("doubled space factors") {
    const Instance in = inst_of(3, 2, 2);
    const SemiSpace& d = *in.space->doubled();
    ComplexMatrix b = ComplexMatrix::Zero(6, 6);
    b.block(0, 0, 3, 3) = in.space->weight();
    b.block(3, 3, 3, 3) = in.space->weight();
    CHECK(svd_norm(d.weight() - b) < 1e-15);
    CHECK(d.rank() == 4);
    CHECK(svd_norm(d.half() * d.half() - b) < 1e-9 * svd_norm(b));
    CHECK(svd_norm(d.weight_pinv() - pinv(b)) < 1e-8 * svd_norm(d.weight_pinv()));
  }

  TEST_CASE("sharp of a block is the transposed block of sharps") {
    for (int trial = 0; trial < 10; ++trial) {
      const Instance in = inst_of(1 + trial % 4, 1 + trial % 2 % (1 + trial % 4), 10 + trial);
      const Block2x2 b = assemble(in.ops[0], in.ops[1], in.ops[2], in.ops[3]);
      CHECK(b.flattened().admits_adjoint());
      const Block2x2 s = split(sharp(b.flattened()), in.space);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(approx_equal_a(s.block(r, c), sharp(b.block(c, r)), 1e-10));
    }
    // One inadmissible block makes the whole block inadmissible.
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    const SpacePtr sp = SemiSpace::create(a);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    const Operator z = Operator::zero(sp);
    CHECK_FALSE(assemble(z, z, Operator(sp, bad), z).flattened().admits_adjoint());
    CHECK_THROWS_AS(w_b(assemble(z, z, Operator(sp, bad), z)), Error);
  }

  TEST_CASE("w_b examples") {
    const SpacePtr id = SemiSpace::identity(2);
    const Operator z = Operator::zero(id);
    const Operator i = Operator::identity(id);
    CHECK(w_b(assemble(z, z, z, z)).value == doctest::Approx(0.0));
    CHECK(w_b(assemble(i, z, z, z)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w_b(assemble(i, z, z, Complex(2.0) * i)).value == doctest::Approx(2.0).epsilon(1e-12));
    ComplexMatrix j = ComplexMatrix::Zero(2, 2);
    j(0, 1) = 1.0;
    const Operator t(id, j);
    CHECK(w_b(assemble(t, z, z, t)).value == doctest::Approx(0.5).epsilon(1e-12));
    for (int trial = 0; trial < 10; ++trial) {
      const Instance in = inst_of(3, 3, 30 + trial);
      const Operator zz = Operator::zero(in.space);
      CHECK(rel_diff(w_b(assemble(zz, in.ops[0], in.ops[0], zz)).value, wa(in.ops[0])) <= 1e-8);
    }
  }

  TEST_CASE("conjugator parsing") {
    CHECK(parse_conjugator("sign") == Conjugator::kSignFlip);
    CHECK(parse_conjugator("hadamard") == Conjugator::kHadamard);
    CHECK(parse_conjugator("i-hadamard") == Conjugator::kIHadamard);
    CHECK(parse_conjugator("swap") == Conjugator::kSwap);
    for (Conjugator c : {Conjugator::kSignFlip, Conjugator::kHadamard, Conjugator::kIHadamard, Conjugator::kSwap})
      CHECK(parse_conjugator(to_string(c)) == c);
    try {
      parse_conjugator("rotate");
      FAIL("expected UnknownConjugator");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnknownConjugator);
    }
  }

  TEST_CASE("conjugation patterns") {
    const Instance in = inst_of(3, 2, 40);
    const Operator& t1 = in.ops[0];
    const Operator& t2 = in.ops[1];
    const Operator& t3 = in.ops[2];
    const Operator& t4 = in.ops[3];
    const Block2x2 b = assemble(t1, t2, t3, t4);
    const Block2x2 sw = conjugate_by(b, Conjugator::kSwap);
    CHECK(same(sw.t11(), t4));
    CHECK(same(sw.t12(), t3));
    CHECK(same(sw.t21(), t2));
    CHECK(same(sw.t22(), t1));
    const Block2x2 sg = conjugate_by(b, Conjugator::kSignFlip);
    CHECK(same(sg.t11(), t1));
    CHECK(same(sg.t12(), -t2));
    CHECK(same(sg.t21(), -t3));
    CHECK(same(sg.t22(), t4));

    const Block2x2 ih = conjugate_by(assemble(kI * t2, -t1, t1, kI * t2), Conjugator::kIHadamard);
    const Operator z = Operator::zero(in.space);
    CHECK(approx_equal_a(ih.t11(), -kI * (t1 - t2), 1e-10));
    CHECK(approx_equal_a(ih.t22(), kI * (t1 + t2), 1e-10));
    CHECK(approx_equal_a(ih.t12(), z, 1e-10));
    CHECK(approx_equal_a(ih.t21(), z, 1e-10));
  }

  TEST_CASE("conjugators are B-unitary and preserve w_b") {
    for (int trial = 0; trial < 6; ++trial) {
      const Instance in = inst_of(1 + trial % 3, 1 + trial % 3, 50 + trial);
      const Block2x2 b = assemble(in.ops[0], in.ops[1], in.ops[2], in.ops[3]);
      const double w = w_b(b).value;
      for (Conjugator c : {Conjugator::kSignFlip, Conjugator::kHadamard, Conjugator::kIHadamard, Conjugator::kSwap}) {
        CHECK(classify(conjugator_operator(in.space, c)).is_a_unitary);
        CHECK(rel_diff(w_b(conjugate_by(b, c)).value, w) <= 1e-8);
      }
    }
  }
}
