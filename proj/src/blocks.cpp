#include "semiradius/blocks.hpp"

#include <cmath>
#include <string>

namespace semiradius {

Block2x2 assemble(const Operator& t11, const Operator& t12, const Operator& t21, const Operator& t22) {
  require_same_space(t11, t12);
  require_same_space(t11, t21);
  require_same_space(t11, t22);
  const auto n = t11.dim();
  ComplexMatrix flat(2 * n, 2 * n);
  flat.topLeftCorner(n, n) = t11.matrix();
  flat.topRightCorner(n, n) = t12.matrix();
  flat.bottomLeftCorner(n, n) = t21.matrix();
  flat.bottomRightCorner(n, n) = t22.matrix();
  return Block2x2({t11, t12, t21, t22}, Operator(t11.space()->doubled(), std::move(flat)));
}

Block2x2 split(const Operator& flat, const SpacePtr& base) {
  if (flat.space() != base->doubled()) {
    throw Error(ErrorCode::kSpaceMismatch, "operator does not live on the doubled space");
  }
  const auto n = base->dim();
  const ComplexMatrix& m = flat.matrix();
  return assemble(Operator(base, m.topLeftCorner(n, n)), Operator(base, m.topRightCorner(n, n)),
                  Operator(base, m.bottomLeftCorner(n, n)), Operator(base, m.bottomRightCorner(n, n)));
}

RadiusResult w_b(const Block2x2& block, const RadiusOptions& opts) {
  return a_numerical_radius(block.flattened(), opts);
}

Conjugator parse_conjugator(std::string_view name) {
  if (name == "sign") return Conjugator::kSignFlip;
  if (name == "hadamard") return Conjugator::kHadamard;
  if (name == "i-hadamard") return Conjugator::kIHadamard;
  if (name == "swap") return Conjugator::kSwap;
  throw Error(ErrorCode::kUnknownConjugator, std::string(name));
}

std::string_view to_string(Conjugator c) {
  switch (c) {
    case Conjugator::kSignFlip: return "sign";
    case Conjugator::kHadamard: return "hadamard";
    case Conjugator::kIHadamard: return "i-hadamard";
    case Conjugator::kSwap: return "swap";
  }
  return "unknown";
}

Operator conjugator_operator(const SpacePtr& base, Conjugator c) {
  // Scalar 2x2 pattern, expanded blockwise with the identity.
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd pattern;
  switch (c) {
    case Conjugator::kSignFlip: pattern << 1.0, 0.0, 0.0, -1.0; break;
    case Conjugator::kHadamard: pattern << r, -r, r, r; break;
    case Conjugator::kIHadamard: pattern << Complex(r), Complex(0.0, r), Complex(0.0, r), Complex(r); break;
    case Conjugator::kSwap: pattern << 0.0, 1.0, 1.0, 0.0; break;
  }
  const auto n = base->dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix u(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) u.block(i * n, j * n, n, n) = pattern(i, j) * id;
  }
  return Operator(base->doubled(), std::move(u));
}

Block2x2 conjugate_by(const Block2x2& block, Conjugator c) {
  const Operator u = conjugator_operator(block.base_space(), c);
  return split(sharp(u) * block.flattened() * u, block.base_space());
}

}  // namespace semiradius
