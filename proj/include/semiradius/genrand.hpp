#pragma once

// Deterministic generation of weights and admissible operators. Every draw is
// a pure function of a GenConfig (and a draw index), so any instance recorded
// in a report can be rebuilt from its config alone.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "semiradius/semispace.hpp"

namespace semiradius {

enum class Ensemble { kGinibre, kHermitian, kASelfadjoint, kAUnitary, kAdmissibleGeneral };
enum class SpaceKind { kRandom, kIdentity };

std::string_view to_string(Ensemble e);
Ensemble parse_ensemble(std::string_view name);
std::string_view to_string(SpaceKind k);
SpaceKind parse_space_kind(std::string_view name);

struct GenConfig {
  std::uint64_t seed = 0;
  int dim = 2;
  int a_rank = 2;
  double entry_scale = 1.0;
  Ensemble ensemble = Ensemble::kAdmissibleGeneral;
  SpaceKind space = SpaceKind::kRandom;

  void validate() const;
  bool operator==(const GenConfig&) const = default;
};

std::uint64_t splitmix64(std::uint64_t x);

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double scale = 1.0);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// A = Q diag(d) Q* with exactly a_rank positive entries, log-uniform in
/// [0.1, 10] * entry_scale. SpaceKind::kIdentity yields A = I.
SpacePtr gen_space(const GenConfig& cfg);

/// An operator from cfg.ensemble, admissible by construction and verified
/// before release (GenerationFailed otherwise). `index` selects independent
/// draws under one config.
Operator gen_operator(const SpacePtr& space, const GenConfig& cfg, std::uint64_t index = 0);

/// Random A-unitary: (A^{1/2})^+ V A^{1/2} + (I - P) G (I - P), V unitary on R(A).
Operator random_a_unitary(const SpacePtr& space, std::mt19937_64& rng);

enum class CorollaryVariant { kA, kB };

/// Four operators with T1^#T2 = 0 = T4 T3^# (variant a) or
/// T1^#T3 = 0 = T4^#T2 (variant b). Requires strictly positive A.
std::array<Operator, 4> gen_corollary_pair(const SpacePtr& space, CorollaryVariant variant, const GenConfig& cfg);

enum class InstanceKind { kGeneral, kCorollaryA, kCorollaryB, kSharpSeed };

std::string_view to_string(InstanceKind k);
InstanceKind parse_instance_kind(std::string_view name);

/// A SemiSpace with four operators and a phase, the unit every check consumes.
struct Instance {
  GenConfig cfg;
  InstanceKind kind = InstanceKind::kGeneral;
  std::uint64_t counter = 0;
  SpacePtr space;
  std::vector<Operator> ops;
  double phase = 0.0;
  std::string digest;
};

/// kSharpSeed is T1 = I, T2 = T3 = T4 = 0 on the config's space.
Instance gen_instance(const GenConfig& cfg, InstanceKind kind, std::uint64_t counter = 0);

/// Wraps user-supplied operators (all on one space) into an Instance.
Instance make_instance(SpacePtr space, std::vector<Operator> ops, double phase = 0.0);

std::string instance_digest(const Instance& inst);

/// Rank of A relative to the dimension: "full", "full-1" or an absolute k
/// (clipped to [1, dim]).
struct RankRule {
  enum class Kind { kFull, kFullMinusOne, kAbsolute } kind = Kind::kFull;
  int value = 0;

  int resolve(int dim) const;
  std::string to_string() const;
  static RankRule parse(std::string_view text);
};

struct Profile {
  std::string name = "standard";
  std::vector<int> dims{1, 2, 3, 4, 6};
  std::vector<RankRule> ranks{{RankRule::Kind::kFull, 0}, {RankRule::Kind::kFullMinusOne, 0}, {RankRule::Kind::kAbsolute, 1}};
  std::vector<Ensemble> ensembles{Ensemble::kGinibre, Ensemble::kHermitian, Ensemble::kASelfadjoint,
                                  Ensemble::kAUnitary, Ensemble::kAdmissibleGeneral};
  SpaceKind space = SpaceKind::kRandom;
  double entry_scale = 1.0;
  /// Mix vanishing-product instances into strictly positive draws.
  bool corollary_mix = true;

  /// "standard", "strict", "degenerate", "classical".
  static Profile named(std::string_view name);
};

/// Instance k of a profile under a master seed; pure function of (seed, k).
struct InstanceStream {
  std::uint64_t master_seed = 0;
  Profile profile;
  std::size_t count = 0;

  GenConfig config_at(std::size_t k) const;
  InstanceKind kind_at(std::size_t k) const;
  Instance at(std::size_t k) const;
};

}  // namespace semiradius
