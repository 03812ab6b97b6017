#include "semiradius/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace semiradius {

namespace {

constexpr std::uint64_t kRestartStride = 0x9e3779b97f4a7c15ULL;
constexpr Ensemble kEnsembles[] = {Ensemble::kAdmissibleGeneral, Ensemble::kGinibre, Ensemble::kHermitian,
                                   Ensemble::kASelfadjoint, Ensemble::kAUnitary};

struct RestartOutcome {
  double ratio = -1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::int64_t evaluations = 0;
  GenConfig cfg;
  InstanceKind kind = InstanceKind::kGeneral;
  std::vector<Operator> ops;
  SpacePtr space;
};

struct Plan {
  GenConfig cfg;
  InstanceKind kind;
};

Plan plan_restart(const Check& check, const SharpnessOptions& opts, int r) {
  Plan p;
  p.cfg.seed = splitmix64(opts.seed + kRestartStride * static_cast<std::uint64_t>(r + 1));
  p.cfg.dim = opts.dim.value_or(1 + (r / 2) % 4);
  const bool corollary = check.id.starts_with("cor-orthogonal");
  const bool strict = check.requires_strict_a || corollary;
  p.cfg.a_rank = strict || (r / 2) % 2 == 0 ? p.cfg.dim : std::max(1, p.cfg.dim - 1);
  p.cfg.ensemble = opts.ensemble.value_or(kEnsembles[static_cast<std::size_t>(r) % std::size(kEnsembles)]);
  if (r % 2 == 0) {
    p.kind = InstanceKind::kSharpSeed;
  } else if (corollary) {
    p.kind = check.id == "cor-orthogonal-a" ? InstanceKind::kCorollaryA : InstanceKind::kCorollaryB;
  } else {
    p.kind = InstanceKind::kGeneral;
  }
  return p;
}

std::optional<Sides> sides_of(const Check& check, const Instance& inst, const SharpnessOptions& opts) {
  try {
    EvalContext ctx(inst, opts.eval);
    std::optional<Sides> s = check.evaluator(ctx);
    if (!s || !(s->rhs > opts.rhs_floor) || !std::isfinite(s->lhs)) return std::nullopt;
    return s;
  } catch (const Error&) {
    return std::nullopt;
  }
}

RestartOutcome run_restart(const Check& check, const SharpnessOptions& opts, int r, std::int64_t budget) {
  const Plan plan = plan_restart(check, opts, r);
  RestartOutcome best;
  best.cfg = plan.cfg;
  best.kind = plan.kind;
  const Instance start = gen_instance(plan.cfg, plan.kind, static_cast<std::uint64_t>(r));
  best.space = start.space;
  best.ops = start.ops;
  const auto arity = static_cast<std::size_t>(check.arity);

  if (auto s = sides_of(check, start, opts)) {
    best.ratio = s->lhs / s->rhs;
    best.lhs = s->lhs;
    best.rhs = s->rhs;
  }
  best.evaluations = 1;

  std::mt19937_64 rng(plan.cfg.seed ^ 0x5851f42d4c957f2dULL);
  double sigma = 0.5;
  std::uint64_t draw = 0;
  while (best.evaluations < budget) {
    std::vector<Operator> ops = best.ops;
    GenConfig step = plan.cfg;
    step.seed = rng();
    if (plan.cfg.ensemble == Ensemble::kAUnitary) {
      const std::size_t k = rng() % arity;
      ops[k] = gen_operator(best.space, step, draw++);
    } else {
      for (std::size_t k = 0; k < arity; ++k) {
        ops[k] = ops[k] + Complex(sigma, 0.0) * gen_operator(best.space, step, draw++);
      }
    }
    ++best.evaluations;
    const Instance cand = make_instance(best.space, ops, start.phase);
    const std::optional<Sides> s = sides_of(check, cand, opts);
    if (s && s->lhs / s->rhs > best.ratio) {
      best.ratio = s->lhs / s->rhs;
      best.lhs = s->lhs;
      best.rhs = s->rhs;
      best.ops = std::move(ops);
      sigma = std::min(2.0, sigma * 1.5);
    } else {
      sigma *= 0.8;
      if (sigma < 1e-6) sigma = 0.5;
    }
  }
  return best;
}

SharpnessResult search_impl(const std::string& check_id, const SharpnessOptions& opts, bool parallel) {
  const Check& check = Registry::standard().get(check_id);
  if (opts.budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be at least 1");
  if (opts.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts must be at least 1");
  if (opts.dim && *opts.dim < 1) throw Error(ErrorCode::kInvalidArgument, "dim must be at least 1");
  const int restarts = static_cast<int>(std::min<std::int64_t>(opts.restarts, opts.budget));
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  const std::int64_t share = opts.budget / restarts;
  const std::int64_t extra = opts.budget % restarts;

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int r = 0; r < restarts; ++r) {
    outcomes[static_cast<std::size_t>(r)] = run_restart(check, opts, r, share + (r < extra ? 1 : 0));
  }

  SharpnessResult result;
  result.check_id = check.id;
  for (int r = 0; r < restarts; ++r) {
    const RestartOutcome& o = outcomes[static_cast<std::size_t>(r)];
    result.evaluations += o.evaluations;
    if (o.ratio > result.best_ratio) {
      result.best_ratio = o.ratio;
      result.lhs = o.lhs;
      result.rhs = o.rhs;
      result.best_restart = r;
    }
  }
  if (result.best_restart >= 0) {
    const RestartOutcome& o = outcomes[static_cast<std::size_t>(result.best_restart)];
    result.start_config = o.cfg;
    result.start_kind = o.kind;
    result.witness.dimension = static_cast<int>(o.space->dim());
    result.witness.a = o.space->weight();
    for (int k = 0; k < check.arity; ++k) {
      result.witness.operators.emplace_back("T" + std::to_string(k + 1), o.ops[static_cast<std::size_t>(k)].matrix());
    }
  }
  return result;
}

}  // namespace

SharpnessResult search_sharpness(const std::string& check_id, const SharpnessOptions& opts) {
  return search_impl(check_id, opts, true);
}

SharpnessResult search_sharpness_serial(const std::string& check_id, const SharpnessOptions& opts) {
  return search_impl(check_id, opts, false);
}

}  // namespace semiradius
