#pragma once

// 2x2 operator matrices over the doubled space with weight B = diag(A, A).

#include <array>
#include <string_view>

#include "semiradius/radius.hpp"

namespace semiradius {

class Block2x2 {
 public:
  /// Blocks in row-major order: [[t11, t12], [t21, t22]].
  const Operator& t11() const { return blocks_[0]; }
  const Operator& t12() const { return blocks_[1]; }
  const Operator& t21() const { return blocks_[2]; }
  const Operator& t22() const { return blocks_[3]; }
  const Operator& block(int row, int col) const { return blocks_[static_cast<std::size_t>(2 * row + col)]; }
  const Operator& flattened() const { return flattened_; }
  const SpacePtr& base_space() const { return blocks_[0].space(); }

  friend Block2x2 assemble(const Operator&, const Operator&, const Operator&, const Operator&);

 private:
  Block2x2(std::array<Operator, 4> blocks, Operator flattened)
      : blocks_(std::move(blocks)), flattened_(std::move(flattened)) {}

  std::array<Operator, 4> blocks_;
  Operator flattened_;
};

/// Throws SpaceMismatch unless all four blocks share one SemiSpace.
Block2x2 assemble(const Operator& t11, const Operator& t12, const Operator& t21, const Operator& t22);

/// Splits an operator on the doubled space back into its four blocks.
Block2x2 split(const Operator& flat, const SpacePtr& base);

RadiusResult w_b(const Block2x2& block, const RadiusOptions& opts = {});

/// The four B-unitaries with scalar blocks used to rearrange 2x2 operator
/// matrices: diag(I, -I), (1/sqrt2)[[I, -I], [I, I]], (1/sqrt2)[[I, iI], [iI, I]]
/// and the block swap [[0, I], [I, 0]].
enum class Conjugator { kSignFlip, kHadamard, kIHadamard, kSwap };

/// Accepts "sign", "hadamard", "i-hadamard", "swap". Throws UnknownConjugator.
Conjugator parse_conjugator(std::string_view name);
std::string_view to_string(Conjugator c);

Operator conjugator_operator(const SpacePtr& base, Conjugator c);

/// U^#B T U.
Block2x2 conjugate_by(const Block2x2& block, Conjugator c);

}  // namespace semiradius
