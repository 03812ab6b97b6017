#include "semiradius/genrand.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace semiradius {

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::kGinibre: return "ginibre";
    case Ensemble::kHermitian: return "hermitian";
    case Ensemble::kASelfadjoint: return "a_selfadjoint";
    case Ensemble::kAUnitary: return "a_unitary";
    case Ensemble::kAdmissibleGeneral: return "admissible_general";
  }
  return "unknown";
}

Ensemble parse_ensemble(std::string_view name) {
  for (Ensemble e : {Ensemble::kGinibre, Ensemble::kHermitian, Ensemble::kASelfadjoint, Ensemble::kAUnitary,
                     Ensemble::kAdmissibleGeneral}) {
    if (to_string(e) == name) return e;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown ensemble '" + std::string(name) + "'");
}

std::string_view to_string(SpaceKind k) { return k == SpaceKind::kIdentity ? "identity" : "random"; }

SpaceKind parse_space_kind(std::string_view name) {
  if (name == "identity") return SpaceKind::kIdentity;
  if (name == "random") return SpaceKind::kRandom;
  throw Error(ErrorCode::kInvalidArgument, "unknown space kind '" + std::string(name) + "'");
}

void GenConfig::validate() const {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "dim must be >= 1");
  if (a_rank < 1 || a_rank > dim) throw Error(ErrorCode::kInvalidArgument, "a_rank must lie in [1, dim]");
  if (!(entry_scale > 0.0) || !std::isfinite(entry_scale)) {
    throw Error(ErrorCode::kInvalidArgument, "entry_scale must be finite and positive");
  }
  if (space == SpaceKind::kIdentity && a_rank != dim) {
    throw Error(ErrorCode::kInvalidArgument, "identity weight has full rank");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

constexpr std::uint64_t kSpaceStream = 0x5350414345ULL;
constexpr std::uint64_t kOperatorStream = 0x4f50455241ULL;
constexpr std::uint64_t kPhaseStream = 0x5048415345ULL;
constexpr std::uint64_t kCorollaryStream = 0x434f524f4cULL;

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  return std::mt19937_64(splitmix64(splitmix64(seed ^ stream) + index));
}

ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale) {
  return hermitian_part(random_gaussian(n, n, rng, scale));
}

}  // namespace

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale / std::numbers::sqrt2);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

SpacePtr gen_space(const GenConfig& cfg) {
  cfg.validate();
  if (cfg.space == SpaceKind::kIdentity) return SemiSpace::identity(cfg.dim);
  auto rng = stream_rng(cfg.seed, kSpaceStream);
  const ComplexMatrix q = random_unitary(cfg.dim, rng);
  std::uniform_real_distribution<double> unit(std::log(0.1), std::log(10.0));
  RealVector d = RealVector::Zero(cfg.dim);
  for (int k = 0; k < cfg.a_rank; ++k) d(k) = std::exp(unit(rng)) * cfg.entry_scale;
  const ComplexMatrix a = q * d.asDiagonal() * q.adjoint();
  return SemiSpace::create(hermitian_part(a));
}

Operator random_a_unitary(const SpacePtr& space, std::mt19937_64& rng) {
  const SemiSpace& s = *space;
  const auto n = s.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix outside = id - s.range_projector();
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  if (s.rank() > 0) {
    const ComplexMatrix w = random_unitary(s.rank(), rng);
    v = s.range_basis() * w * s.range_basis().adjoint();
  }
  const ComplexMatrix g = random_gaussian(n, n, rng);
  return Operator(space, s.half_pinv() * v * s.half() + outside * g * outside);
}

Operator gen_operator(const SpacePtr& space, const GenConfig& cfg, std::uint64_t index) {
  const SemiSpace& s = *space;
  auto rng = stream_rng(cfg.seed, kOperatorStream, index);
  const auto n = s.dim();
  const ComplexMatrix& p = s.range_projector();
  const ComplexMatrix outside = ComplexMatrix::Identity(n, n) - p;
  const double scale = cfg.entry_scale;

  auto admissible = [&]() {
    const ComplexMatrix g = random_gaussian(n, n, rng, scale);
    const ComplexMatrix h = random_gaussian(n, n, rng, scale);
    return Operator(space, g * p + outside * h);
  };

  std::optional<Operator> t;
  bool predicate = true;
  switch (cfg.ensemble) {
    case Ensemble::kGinibre: {
      // Plain Ginibre when A > 0; otherwise G P + (I - P) G keeps T* A inside R(A).
      const ComplexMatrix g = random_gaussian(n, n, rng, scale);
      t.emplace(space, g * p + outside * g);
      break;
    }
    case Ensemble::kHermitian: {
      const ComplexMatrix h = random_hermitian(n, rng, scale);
      const ComplexMatrix k = random_hermitian(n, rng, scale);
      t.emplace(space, p * h * p + outside * k * outside);
      const ComplexMatrix& m = t->matrix();
      predicate = spectral_norm(m - m.adjoint()) <= s.tolerance().residual_abs * std::max(1.0, spectral_norm(m));
      break;
    }
    case Ensemble::kASelfadjoint:
      t.emplace(re_a(admissible()));
      predicate = classify(*t).is_a_selfadjoint;
      break;
    case Ensemble::kAUnitary:
      t.emplace(random_a_unitary(space, rng));
      predicate = classify(*t).is_a_unitary;
      break;
    case Ensemble::kAdmissibleGeneral:
      t.emplace(admissible());
      break;
  }
  if (!t->admits_adjoint() || !predicate) {
    throw Error(ErrorCode::kGenerationFailed, "draw failed verification for ensemble " +
                                                  std::string(to_string(cfg.ensemble)));
  }
  return *t;
}

std::array<Operator, 4> gen_corollary_pair(const SpacePtr& space, CorollaryVariant variant, const GenConfig& cfg) {
  const SemiSpace& s = *space;
  if (!s.strictly_positive()) throw Error(ErrorCode::kRequiresStrictA, "corollary instances need A > 0");
  auto rng = stream_rng(cfg.seed, kCorollaryStream);
  const auto n = s.dim();
  const double scale = cfg.entry_scale;

  // Complementary orthogonal projections E1 + E2 = I of random split rank.
  auto split = [&]() {
    int k = 0;
    if (n >= 2) {
      k = std::uniform_int_distribution<int>(1, static_cast<int>(n) - 1)(rng);
    } else {
      k = std::uniform_int_distribution<int>(0, 1)(rng);
    }
    const ComplexMatrix w = random_unitary(n, rng);
    const ComplexMatrix e1 = w.leftCols(k) * w.leftCols(k).adjoint();
    const ComplexMatrix e2 = w.rightCols(n - k) * w.rightCols(n - k).adjoint();
    return std::pair{e1, e2};
  };
  auto gauss = [&]() { return random_gaussian(n, n, rng, scale); };

  // Ranges A-orthogonal:  X = A^{-1/2} E1 G,  Y = A^{-1/2} E2 H  gives X^# Y = 0.
  // Co-ranges A-orthogonal: X = G F1 A^{1/2}, Y = H F2 A^{1/2} gives Y X^# = 0.
  const auto [e1, e2] = split();
  const auto [f1, f2] = split();
  const ComplexMatrix& hp = s.half_pinv();
  const ComplexMatrix& h = s.half();
  ComplexMatrix t1, t2, t3, t4;
  if (variant == CorollaryVariant::kA) {
    t1 = hp * e1 * gauss();
    t2 = hp * e2 * gauss();
    t3 = gauss() * f1 * h;
    t4 = gauss() * f2 * h;
  } else {
    t1 = hp * e1 * gauss();
    t3 = hp * e2 * gauss();
    t4 = hp * f1 * gauss();
    t2 = hp * f2 * gauss();
  }
  std::array<Operator, 4> ops{Operator(space, t1), Operator(space, t2), Operator(space, t3), Operator(space, t4)};

  auto residual = [](const Operator& prod, const Operator& a, const Operator& b) {
    return op_seminorm(prod) / std::max(1.0, op_seminorm(a) * op_seminorm(b));
  };
  double r1 = 0.0;
  double r2 = 0.0;
  if (variant == CorollaryVariant::kA) {
    r1 = residual(sharp(ops[0]) * ops[1], ops[0], ops[1]);
    r2 = residual(ops[3] * sharp(ops[2]), ops[3], ops[2]);
  } else {
    r1 = residual(sharp(ops[0]) * ops[2], ops[0], ops[2]);
    r2 = residual(sharp(ops[3]) * ops[1], ops[3], ops[1]);
  }
  if (std::max(r1, r2) > 1e-10) {
    throw Error(ErrorCode::kGenerationFailed, "vanishing-product residual " + std::to_string(std::max(r1, r2)));
  }
  return ops;
}

std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::kGeneral: return "general";
    case InstanceKind::kCorollaryA: return "corollary_a";
    case InstanceKind::kCorollaryB: return "corollary_b";
    case InstanceKind::kSharpSeed: return "sharp_seed";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(std::string_view name) {
  for (InstanceKind k : {InstanceKind::kGeneral, InstanceKind::kCorollaryA, InstanceKind::kCorollaryB,
                         InstanceKind::kSharpSeed}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown instance kind '" + std::string(name) + "'");
}

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = matrix_hash(inst.space->weight());
  for (const Operator& op : inst.ops) h = matrix_hash(op.matrix(), h);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "s%016llx-n%d-r%d-%016llx", static_cast<unsigned long long>(inst.cfg.seed),
                static_cast<int>(inst.space->dim()), static_cast<int>(inst.space->rank()),
                static_cast<unsigned long long>(h));
  return buf;
}

Instance gen_instance(const GenConfig& cfg, InstanceKind kind, std::uint64_t counter) {
  Instance inst;
  inst.cfg = cfg;
  inst.kind = kind;
  inst.counter = counter;
  inst.space = gen_space(cfg);
  switch (kind) {
    case InstanceKind::kGeneral:
      for (std::uint64_t i = 0; i < 4; ++i) inst.ops.push_back(gen_operator(inst.space, cfg, i));
      break;
    case InstanceKind::kCorollaryA:
    case InstanceKind::kCorollaryB: {
      const auto ops = gen_corollary_pair(
          inst.space, kind == InstanceKind::kCorollaryA ? CorollaryVariant::kA : CorollaryVariant::kB, cfg);
      inst.ops.assign(ops.begin(), ops.end());
      break;
    }
    case InstanceKind::kSharpSeed:
      inst.ops = {Operator::identity(inst.space), Operator::zero(inst.space), Operator::zero(inst.space),
                  Operator::zero(inst.space)};
      break;
  }
  auto rng = stream_rng(cfg.seed, kPhaseStream);
  inst.phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  inst.digest = instance_digest(inst);
  return inst;
}

Instance make_instance(SpacePtr space, std::vector<Operator> ops, double phase) {
  Instance inst;
  inst.cfg.dim = static_cast<int>(space->dim());
  inst.cfg.a_rank = std::max<int>(1, static_cast<int>(space->rank()));
  inst.space = std::move(space);
  for (const Operator& op : ops) {
    if (op.space() != inst.space) throw Error(ErrorCode::kSpaceMismatch, "instance operators must share the space");
  }
  inst.ops = std::move(ops);
  inst.phase = phase;
  inst.digest = instance_digest(inst);
  return inst;
}

int RankRule::resolve(int dim) const {
  switch (kind) {
    case Kind::kFull: return dim;
    case Kind::kFullMinusOne: return std::max(1, dim - 1);
    case Kind::kAbsolute: return std::clamp(value, 1, dim);
  }
  return dim;
}

std::string RankRule::to_string() const {
  switch (kind) {
    case Kind::kFull: return "full";
    case Kind::kFullMinusOne: return "full-1";
    case Kind::kAbsolute: return std::to_string(value);
  }
  return "full";
}

RankRule RankRule::parse(std::string_view text) {
  if (text == "full") return {Kind::kFull, 0};
  if (text == "full-1") return {Kind::kFullMinusOne, 0};
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad rank rule '" + std::string(text) + "'");
  }
  return {Kind::kAbsolute, v};
}

Profile Profile::named(std::string_view name) {
  Profile p;
  p.name = std::string(name);
  if (name == "standard") return p;
  if (name == "strict") {
    p.ranks = {{RankRule::Kind::kFull, 0}};
    return p;
  }
  if (name == "degenerate") {
    p.dims = {2, 3, 4, 6};
    p.ranks = {{RankRule::Kind::kFullMinusOne, 0}, {RankRule::Kind::kAbsolute, 1}};
    p.corollary_mix = false;
    return p;
  }
  if (name == "classical") {
    p.ranks = {{RankRule::Kind::kFull, 0}};
    p.space = SpaceKind::kIdentity;
    return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown profile '" + std::string(name) + "'");
}

GenConfig InstanceStream::config_at(std::size_t k) const {
  const std::size_t nd = profile.dims.size();
  const std::size_t nr = profile.ranks.size();
  const std::size_t ne = profile.ensembles.size();
  if (nd == 0 || nr == 0 || ne == 0) throw Error(ErrorCode::kInvalidArgument, "empty profile");
  GenConfig cfg;
  cfg.seed = splitmix64(master_seed + 0x632be59bd9b4e019ULL * (k + 1));
  cfg.dim = profile.dims[k % nd];
  cfg.a_rank = profile.ranks[(k / nd) % nr].resolve(cfg.dim);
  cfg.ensemble = profile.ensembles[(k / (nd * nr)) % ne];
  cfg.entry_scale = profile.entry_scale;
  cfg.space = profile.space;
  if (cfg.space == SpaceKind::kIdentity) cfg.a_rank = cfg.dim;
  return cfg;
}

InstanceKind InstanceStream::kind_at(std::size_t k) const {
  const GenConfig cfg = config_at(k);
  if (!profile.corollary_mix || cfg.a_rank != cfg.dim) return InstanceKind::kGeneral;
  switch ((cfg.seed >> 17) % 4) {
    case 0: return InstanceKind::kCorollaryA;
    case 1: return InstanceKind::kCorollaryB;
    default: return InstanceKind::kGeneral;
  }
}

Instance InstanceStream::at(std::size_t k) const { return gen_instance(config_at(k), kind_at(k), k); }

}  // namespace semiradius
