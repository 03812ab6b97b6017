#include "semiradius/inequalities.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace semiradius {

std::string_view to_string(CheckMode m) { return m == CheckMode::kAssert ? "assert" : "audit"; }
std::string_view to_string(Relation r) { return r == Relation::kInequality ? "inequality" : "identity"; }

double slack_tolerance(double lhs, double rhs, double slack_rel) {
  return slack_rel * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

EvalContext::EvalContext(const Instance& instance, const EvalOptions& opts) : instance_(instance), opts_(opts) {}

const Operator& EvalContext::t(int i) const {
  if (i < 1 || static_cast<std::size_t>(i) > instance_.ops.size()) {
    throw Error(ErrorCode::kArityMismatch, "instance has no operator T" + std::to_string(i));
  }
  return instance_.ops[static_cast<std::size_t>(i - 1)];
}

double EvalContext::w(const Operator& op) {
  const auto key = std::make_pair(op.space().get(), matrix_hash(op.matrix()));
  if (auto it = w_cache_.find(key); it != w_cache_.end()) return it->second;
  const double v = a_numerical_radius(op, opts_.radius).value;
  w_cache_.emplace(key, v);
  return v;
}

double EvalContext::norm(const Operator& op) {
  const auto key = std::make_pair(op.space().get(), matrix_hash(op.matrix()));
  if (auto it = n_cache_.find(key); it != n_cache_.end()) return it->second;
  const double v = op_seminorm(op);
  n_cache_.emplace(key, v);
  return v;
}

double EvalContext::wb(const Operator& a, const Operator& b, const Operator& c, const Operator& d) {
  return w(assemble(a, b, c, d).flattened());
}

double EvalContext::nb(const Operator& a, const Operator& b, const Operator& c, const Operator& d) {
  return norm(assemble(a, b, c, d).flattened());
}

Sides scalar_max_identity(double a, double b) { return {(a + b) / 2.0, std::max(a, b) - std::abs(a - b) / 2.0}; }
Sides scalar_min_identity(double a, double b) { return {(a + b) / 2.0, std::min(a, b) + std::abs(a - b) / 2.0}; }

namespace {

double sq(double x) { return x * x; }

// sqrt((||X + Y||^2 + ||X - Y||^2) / 2)
double rms_pair(EvalContext& c, const Operator& x, const Operator& y) {
  return std::sqrt((sq(c.norm(x + y)) + sq(c.norm(x - y))) / 2.0);
}

// (1/sqrt2) sqrt(a^2 + b^2 + sqrt((a^2 - b^2)^2 + 4 p^2)), the norm of the 2x2
// matrix [[a^2, p], [p, b^2]] to the power 1/2.
double nested_radical(double a, double b, double p) {
  const double a2 = a * a;
  const double b2 = b * b;
  return std::sqrt(a2 + b2 + std::sqrt(sq(a2 - b2) + 4.0 * p * p)) / std::numbers::sqrt2;
}

bool vanishes(EvalContext& c, const Operator& prod, const Operator& x, const Operator& y) {
  return c.norm(prod) <= c.options().precondition_rel * std::max(1.0, c.norm(x) * c.norm(y));
}

}  // namespace

Registry::Registry() {
  const Complex i = kI;
  auto add = [this](std::string id, int arity, bool strict, CheckMode mode, Relation rel, std::string statement,
                    Evaluator fn) {
    index_.emplace(id, checks_.size());
    checks_.push_back(Check{std::move(id), arity, strict, mode, rel, std::move(statement), std::move(fn)});
  };
  constexpr auto kAssert = CheckMode::kAssert;
  constexpr auto kAudit = CheckMode::kAudit;
  constexpr auto kLe = Relation::kInequality;
  constexpr auto kEq = Relation::kIdentity;

  // Single operator: seminorm / radius basics.
  add("ineq1-lower", 1, false, kAssert, kLe, "||T||_A / 2 <= w_A(T)", [](EvalContext& c) -> std::optional<Sides> {
    return Sides{c.norm(c.t(1)) / 2.0, c.w(c.t(1))};
  });
  add("ineq1-upper", 1, false, kAssert, kLe, "w_A(T) <= ||T||_A", [](EvalContext& c) -> std::optional<Sides> {
    return Sides{c.w(c.t(1)), c.norm(c.t(1))};
  });
  add("ineq0-identities", 1, false, kAssert, kEq, "||T^# T||_A = ||T T^#||_A = ||T||_A^2 = ||T^#||_A^2",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator& t = c.t(1);
        const Operator ts = sharp(t);
        const double ref = sq(c.norm(t));
        double worst = ref;
        for (double q : {c.norm(ts * t), c.norm(t * ts), sq(c.norm(ts))}) {
          if (std::abs(q - ref) > std::abs(worst - ref)) worst = q;
        }
        return Sides{ref, worst};
      });
  add("selfadjoint-radius", 1, false, kAssert, kEq, "S = Re_A(T) is A-selfadjoint, w_A(S) = ||S||_A",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator s = re_a(c.t(1));
        return Sides{c.w(s), c.norm(s)};
      });

  // Block identities.
  add("lem0001-i", 2, false, kAssert, kEq, "w_B(diag(T1, T2)) = max(w_A(T1), w_A(T2))",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        return Sides{c.wb(c.t(1), z, z, c.t(2)), std::max(c.w(c.t(1)), c.w(c.t(2)))};
      });
  add("lem0001-ii", 2, true, kAssert, kEq, "w_B([[0, T1], [T2, 0]]) = w_B([[0, T2], [T1, 0]])",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        return Sides{c.wb(z, c.t(1), c.t(2), z), c.wb(z, c.t(2), c.t(1), z)};
      });
  add("lem0001-iii", 2, true, kAssert, kEq, "w_B([[0, T1], [e^{i phi} T2, 0]]) = w_B([[0, T1], [T2, 0]])",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        const Complex phase = std::polar(1.0, c.instance().phase);
        return Sides{c.wb(z, c.t(1), phase * c.t(2), z), c.wb(z, c.t(1), c.t(2), z)};
      });
  add("lem0001-iv", 2, true, kAssert, kEq, "w_B([[T1, T2], [T2, T1]]) = max(w_A(T1 + T2), w_A(T1 - T2))",
      [](EvalContext& c) -> std::optional<Sides> {
        return Sides{c.wb(c.t(1), c.t(2), c.t(2), c.t(1)), std::max(c.w(c.t(1) + c.t(2)), c.w(c.t(1) - c.t(2)))};
      });

  // Antidiagonal bounds, evaluated with B = diag(A, A).
  add("lem0002-lower", 2, true, kAssert, kLe,
      "max(w_A(T1 + T2), w_A(T1 - T2)) / 2 <= w_B([[0, T1], [T2, 0]])", [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        return Sides{std::max(c.w(c.t(1) + c.t(2)), c.w(c.t(1) - c.t(2))) / 2.0, c.wb(z, c.t(1), c.t(2), z)};
      });
  add("lem0002-upper", 2, true, kAssert, kLe,
      "w_B([[0, T1], [T2, 0]]) <= (w_A(T1 + T2) + w_A(T1 - T2)) / 2", [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        return Sides{c.wb(z, c.t(1), c.t(2), z), (c.w(c.t(1) + c.t(2)) + c.w(c.t(1) - c.t(2))) / 2.0};
      });
  add("lem00003-pinch", 4, false, kAssert, kLe, "||T||_B <= ||(||T_ij||_A)||_2",
      [](EvalContext& c) -> std::optional<Sides> {
        Eigen::Matrix2cd hat;
        hat << c.norm(c.t(1)), c.norm(c.t(2)), c.norm(c.t(3)), c.norm(c.t(4));
        return Sides{c.nb(c.t(1), c.t(2), c.t(3), c.t(4)), spectral_norm(hat)};
      });

  // Pinchings.
  add("l001-diag", 4, false, kAssert, kLe, "w_B(diag(T1, T4)) <= w_B([[T1, T2], [T3, T4]])",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        return Sides{c.wb(c.t(1), z, z, c.t(4)), c.wb(c.t(1), c.t(2), c.t(3), c.t(4))};
      });
  add("l001-offdiag", 4, false, kAssert, kLe, "w_B([[0, T2], [T3, 0]]) <= w_B([[T1, T2], [T3, T4]])",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        return Sides{c.wb(z, c.t(2), c.t(3), z), c.wb(c.t(1), c.t(2), c.t(3), c.t(4))};
      });

  add("eq01-lower", 2, true, kAssert, kLe, "max(w_A(T1), w_A(T2)) <= w_B([[T1, T2], [-T2, -T1]])",
      [](EvalContext& c) -> std::optional<Sides> {
        return Sides{std::max(c.w(c.t(1)), c.w(c.t(2))), c.wb(c.t(1), c.t(2), -c.t(2), -c.t(1))};
      });
  add("eq01-upper", 2, true, kAssert, kLe, "w_B([[T1, T2], [-T2, -T1]]) <= w_A(T1) + w_A(T2)",
      [](EvalContext& c) -> std::optional<Sides> {
        return Sides{c.wb(c.t(1), c.t(2), -c.t(2), -c.t(1)), c.w(c.t(1)) + c.w(c.t(2))};
      });
  add("eq01-remark-lower", 1, true, kAssert, kLe, "w_A(T) <= w_B([[T, T], [-T, -T]])",
      [](EvalContext& c) -> std::optional<Sides> {
        return Sides{c.w(c.t(1)), c.wb(c.t(1), c.t(1), -c.t(1), -c.t(1))};
      });
  add("eq01-remark-upper", 1, true, kAssert, kLe, "w_B([[T, T], [-T, -T]]) <= 2 w_A(T)",
      [](EvalContext& c) -> std::optional<Sides> {
        return Sides{c.wb(c.t(1), c.t(1), -c.t(1), -c.t(1)), 2.0 * c.w(c.t(1))};
      });
  add("l002-identity", 2, true, kAssert, kEq, "w_B([[T2, -T1], [T1, T2]]) = max(w_A(T1 + i T2), w_A(T1 - i T2))",
      [i](EvalContext& c) -> std::optional<Sides> {
        return Sides{c.wb(c.t(2), -c.t(1), c.t(1), c.t(2)),
                     std::max(c.w(c.t(1) + i * c.t(2)), c.w(c.t(1) - i * c.t(2)))};
      });
  add("t002-upper", 4, true, kAssert, kLe,
      "w_B(T) <= max(w_A(T1 + T4 + i(T2 - T3)), w_A(T1 + T4 - i(T2 - T3))) / 2 + (w_A(T4 - T1) + w_A(T2 + T3)) / 2",
      [i](EvalContext& c) -> std::optional<Sides> {
        const Operator s = c.t(1) + c.t(4);
        const Operator d = c.t(2) - c.t(3);
        const double rhs = std::max(c.w(s + i * d), c.w(s - i * d)) / 2.0 +
                           (c.w(c.t(4) - c.t(1)) + c.w(c.t(2) + c.t(3))) / 2.0;
        return Sides{c.wb(c.t(1), c.t(2), c.t(3), c.t(4)), rhs};
      });
  add("diagmax-halfsum", 4, true, kAssert, kLe,
      "w_B(T) <= max(w_A(T1), w_A(T4)) + (w_A(T2 + T3) + w_A(T2 - T3)) / 2",
      [](EvalContext& c) -> std::optional<Sides> {
        const double rhs = std::max(c.w(c.t(1)), c.w(c.t(4))) + (c.w(c.t(2) + c.t(3)) + c.w(c.t(2) - c.t(3))) / 2.0;
        return Sides{c.wb(c.t(1), c.t(2), c.t(3), c.t(4)), rhs};
      });
  add("four-term-lower", 4, true, kAssert, kLe,
      "max(w_A(T1), w_A(T4), w_A(T2 + T3) / 2, w_A(T2 - T3) / 2) <= w_B(T)",
      [](EvalContext& c) -> std::optional<Sides> {
        const double lhs = std::max({c.w(c.t(1)), c.w(c.t(4)), c.w(c.t(2) + c.t(3)) / 2.0,
                                     c.w(c.t(2) - c.t(3)) / 2.0});
        return Sides{lhs, c.wb(c.t(1), c.t(2), c.t(3), c.t(4))};
      });

  add("scalar-max-identity", 2, false, kAssert, kEq, "(a + b) / 2 = max(a, b) - |a - b| / 2, a = w_A(T1), b = w_A(T2)",
      [](EvalContext& c) -> std::optional<Sides> { return scalar_max_identity(c.w(c.t(1)), c.w(c.t(2))); });
  add("scalar-min-identity", 2, false, kAssert, kEq, "(a + b) / 2 = min(a, b) + |a - b| / 2, a = w_A(T1), b = w_A(T2)",
      [](EvalContext& c) -> std::optional<Sides> { return scalar_min_identity(c.w(c.t(1)), c.w(c.t(2))); });

  // Seminorm min/max bounds.
  add("minmax-lemma-upper", 2, false, kAudit, kLe,
      "max(||T1 + T2||_A^2, ||T1 - T2||_A^2) <= min(||T1^#T1 + T2^#T2||_A + ||T1^#T2 + T2^#T1||_A, "
      "||T1T1^# + T2T2^#||_A + ||T1T2^# + T2T1^#||_A)",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator& a = c.t(1);
        const Operator& b = c.t(2);
        const Operator as = sharp(a);
        const Operator bs = sharp(b);
        const double lhs = std::max(sq(c.norm(a + b)), sq(c.norm(a - b)));
        const double rhs = std::min(c.norm(as * a + bs * b) + c.norm(as * b + bs * a),
                                    c.norm(a * as + b * bs) + c.norm(a * bs + b * as));
        return Sides{lhs, rhs};
      });
  add("minmax-lemma-lower", 2, false, kAudit, kLe,
      "max(||T1^#T1 + T2^#T2||_A - ||T1^#T2 + T2^#T1||_A, ||T1T1^# + T2T2^#||_A - ||T1T2^# + T2T1^#||_A) "
      "<= min(||T1 + T2||_A^2, ||T1 - T2||_A^2)",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator& a = c.t(1);
        const Operator& b = c.t(2);
        const Operator as = sharp(a);
        const Operator bs = sharp(b);
        const double lhs = std::max(c.norm(as * a + bs * b) - c.norm(as * b + bs * a),
                                    c.norm(a * as + b * bs) - c.norm(a * bs + b * as));
        return Sides{lhs, std::min(sq(c.norm(a + b)), sq(c.norm(a - b)))};
      });
  auto lem0004_core = [](EvalContext& c) {
    const Operator& a = c.t(1);
    const Operator& b = c.t(2);
    const Operator as = sharp(a);
    const Operator bs = sharp(b);
    const double m = std::max({c.norm(a * a + b * b), c.norm(as * a + bs * b), c.norm(a * as + b * bs)});
    const double p = sq(c.norm(a + b));
    const double q = sq(c.norm(a - b));
    return std::array<double, 3>{m, p, q};
  };
  add("lem0004-max", 2, false, kAudit, kLe,
      "max(||T1^2 + T2^2||_A, ||T1^#T1 + T2^#T2||_A, ||T1T1^# + T2T2^#||_A) + |p - q| / 2 <= max(p, q), "
      "p = ||T1 + T2||_A^2, q = ||T1 - T2||_A^2",
      [lem0004_core](EvalContext& c) -> std::optional<Sides> {
        const auto [m, p, q] = lem0004_core(c);
        return Sides{m + std::abs(p - q) / 2.0, std::max(p, q)};
      });
  add("lem0004-min", 2, false, kAudit, kLe,
      "max(||T1^2 + T2^2||_A, ||T1^#T1 + T2^#T2||_A, ||T1T1^# + T2T2^#||_A) - |p - q| / 2 <= min(p, q)",
      [lem0004_core](EvalContext& c) -> std::optional<Sides> {
        const auto [m, p, q] = lem0004_core(c);
        return Sides{m - std::abs(p - q) / 2.0, std::min(p, q)};
      });

  // Root-mean-square upper bounds.
  add("thm20005-alpha", 4, false, kAssert, kLe,
      "w_B(T) <= sqrt((||T1 + T2||^2 + ||T1 - T2||^2) / 2) + sqrt((||T4 + T3||^2 + ||T4 - T3||^2) / 2)",
      [](EvalContext& c) -> std::optional<Sides> {
        const double alpha = rms_pair(c, c.t(1), c.t(2)) + rms_pair(c, c.t(4), c.t(3));
        return Sides{c.wb(c.t(1), c.t(2), c.t(3), c.t(4)), alpha};
      });
  add("thm20005-min-alpha-beta", 4, false, kAudit, kLe,
      "w_B(T) <= min(alpha, beta), beta = sqrt((||T1 + T3||^2 + ||T1 - T3||^2) / 2) + "
      "sqrt((||T2 + T4^#||^2 + ||T2 - T4^#||^2) / 2)",
      [](EvalContext& c) -> std::optional<Sides> {
        const double alpha = rms_pair(c, c.t(1), c.t(2)) + rms_pair(c, c.t(4), c.t(3));
        const double beta = rms_pair(c, c.t(1), c.t(3)) + rms_pair(c, c.t(2), sharp(c.t(4)));
        return Sides{c.wb(c.t(1), c.t(2), c.t(3), c.t(4)), std::min(alpha, beta)};
      });
  add("thm20005-beta-proof", 4, false, kAssert, kLe,
      "w_B(T) <= sqrt((||T1 + T3||^2 + ||T1 - T3||^2) / 2) + sqrt((||T2 + T4||^2 + ||T2 - T4||^2) / 2)",
      [](EvalContext& c) -> std::optional<Sides> {
        const double beta = rms_pair(c, c.t(1), c.t(3)) + rms_pair(c, c.t(2), c.t(4));
        return Sides{c.wb(c.t(1), c.t(2), c.t(3), c.t(4)), beta};
      });
  add("secondrow-zero-lower", 2, false, kAssert, kLe,
      "max(w_A(T1 + T2), w_A(T1 - T2), w_A(T1 + i T2), w_A(T1 - i T2)) / 2 <= w_B([[T1, T2], [0, 0]])",
      [i](EvalContext& c) -> std::optional<Sides> {
        const Operator& a = c.t(1);
        const Operator& b = c.t(2);
        const double lhs = std::max({c.w(a + b), c.w(a - b), c.w(a + i * b), c.w(a - i * b)}) / 2.0;
        const Operator z = c.zero();
        return Sides{lhs, c.wb(a, b, z, z)};
      });
  add("thm20006-min-alpha-beta", 4, false, kAudit, kLe,
      "w_B(T) <= min(alpha, beta) with alpha = r(||T1||, ||T2||, ||T1^#T2||) + r(||T3||, ||T4||, ||T4T3^#||), "
      "beta = r(||T1||, ||T3||, ||T1^#T3||) + r(||T2||, ||T4||, ||T4^#T2||), "
      "r(a, b, p) = sqrt(a^2 + b^2 + sqrt((a^2 - b^2)^2 + 4p^2)) / sqrt2",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator& t1 = c.t(1);
        const Operator& t2 = c.t(2);
        const Operator& t3 = c.t(3);
        const Operator& t4 = c.t(4);
        const double alpha = nested_radical(c.norm(t1), c.norm(t2), c.norm(sharp(t1) * t2)) +
                             nested_radical(c.norm(t3), c.norm(t4), c.norm(t4 * sharp(t3)));
        const double beta = nested_radical(c.norm(t1), c.norm(t3), c.norm(sharp(t1) * t3)) +
                            nested_radical(c.norm(t2), c.norm(t4), c.norm(sharp(t4) * t2));
        return Sides{c.wb(t1, t2, t3, t4), std::min(alpha, beta)};
      });
  add("cor-orthogonal-a", 4, false, kAudit, kLe,
      "if T1^#T2 = 0 = T4T3^#: w_B(T) <= max(||T1||_A, ||T2||_A) + max(||T3||_A, ||T4||_A)",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator& t1 = c.t(1);
        const Operator& t2 = c.t(2);
        const Operator& t3 = c.t(3);
        const Operator& t4 = c.t(4);
        if (!vanishes(c, sharp(t1) * t2, t1, t2) || !vanishes(c, t4 * sharp(t3), t4, t3)) return std::nullopt;
        return Sides{c.wb(t1, t2, t3, t4), std::max(c.norm(t1), c.norm(t2)) + std::max(c.norm(t3), c.norm(t4))};
      });
  add("cor-orthogonal-b", 4, false, kAudit, kLe,
      "if T1^#T3 = 0 = T4^#T2: w_B(T) <= max(||T1||_A, ||T3||_A) + max(||T2||_A, ||T4||_A)",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator& t1 = c.t(1);
        const Operator& t2 = c.t(2);
        const Operator& t3 = c.t(3);
        const Operator& t4 = c.t(4);
        if (!vanishes(c, sharp(t1) * t3, t1, t3) || !vanishes(c, sharp(t4) * t2, t4, t2)) return std::nullopt;
        return Sides{c.wb(t1, t2, t3, t4), std::max(c.norm(t1), c.norm(t3)) + std::max(c.norm(t2), c.norm(t4))};
      });

  // Refinements of the lower half of ||T||/2 <= w(T).
  add("refine1-block", 2, false, kAssert, kLe,
      "w_B([[0, T1], [T2, 0]]) <= w_A(T1) + w_A(T2) - |w_A(T1 + T2) - w_A(T1 - T2)| / 2",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        const double rhs = c.w(c.t(1)) + c.w(c.t(2)) - std::abs(c.w(c.t(1) + c.t(2)) - c.w(c.t(1) - c.t(2))) / 2.0;
        return Sides{c.wb(z, c.t(1), c.t(2), z), rhs};
      });
  auto re_im_sharp = [](EvalContext& c) {
    const Operator ts = sharp(c.t(1));
    return std::array<double, 3>{c.norm(c.t(1)), c.norm(re_a(ts)), c.norm(im_a(ts))};
  };
  add("refine1-scalar", 1, false, kAssert, kLe, "||T||_A / 2 + (||Re_A(T^#)||_A - ||Im_A(T^#)||_A) / 2 <= w_A(T)",
      [re_im_sharp](EvalContext& c) -> std::optional<Sides> {
        const auto [n, re, im] = re_im_sharp(c);
        return Sides{n / 2.0 + (re - im) / 2.0, c.w(c.t(1))};
      });
  add("refine1-scalar-abs", 1, false, kAudit, kLe, "||T||_A / 2 + |||Re_A(T^#)||_A - ||Im_A(T^#)||_A| / 2 <= w_A(T)",
      [re_im_sharp](EvalContext& c) -> std::optional<Sides> {
        const auto [n, re, im] = re_im_sharp(c);
        return Sides{n / 2.0 + std::abs(re - im) / 2.0, c.w(c.t(1))};
      });
  add("refine2-block", 2, false, kAudit, kLe,
      "w_B([[0, T1], [T2, 0]]) + m + |w_A(T1 + T2) - m| / 2 + |w_A(T1 - T2) - m| / 2 <= 2(w_A(T1) + w_A(T2)), "
      "m = (||T1||_A + ||T2||_A) / 2",
      [](EvalContext& c) -> std::optional<Sides> {
        const Operator z = c.zero();
        const double m = (c.norm(c.t(1)) + c.norm(c.t(2))) / 2.0;
        const double lhs = c.wb(z, c.t(1), c.t(2), z) + m + std::abs(c.w(c.t(1) + c.t(2)) - m) / 2.0 +
                           std::abs(c.w(c.t(1) - c.t(2)) - m) / 2.0;
        return Sides{lhs, 2.0 * (c.w(c.t(1)) + c.w(c.t(2)))};
      });
  add("refine2-scalar", 1, false, kAudit, kLe,
      "||T||_A / 2 + |||Re_A(T^#)||_A - ||T||_A / 2| / 4 + |||Im_A(T^#)||_A - ||T||_A / 2| / 4 <= w_A(T)",
      [re_im_sharp](EvalContext& c) -> std::optional<Sides> {
        const auto [n, re, im] = re_im_sharp(c);
        return Sides{n / 2.0 + std::abs(re - n / 2.0) / 4.0 + std::abs(im - n / 2.0) / 4.0, c.w(c.t(1))};
      });

  aliases_.emplace("thm20005", "thm20005-min-alpha-beta");
  aliases_.emplace("thm20006", "thm20006-min-alpha-beta");
}

const Registry& Registry::standard() {
  static const Registry registry;
  return registry;
}

const Check& Registry::get(std::string_view id) const {
  if (auto a = aliases_.find(id); a != aliases_.end()) id = a->second;
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownCheckId, std::string(id));
  return checks_[it->second];
}

bool Registry::contains(std::string_view id) const { return aliases_.contains(id) || index_.contains(id); }

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  for (const Check& c : checks_) out.push_back(c.id);
  return out;
}

std::vector<std::string> Registry::resolve(const std::vector<std::string>& selection) const {
  if (selection.empty()) return ids();
  std::vector<bool> chosen(checks_.size(), false);
  for (const std::string& id : selection) chosen[index_.at(get(id).id)] = true;
  std::vector<std::string> out;
  for (std::size_t k = 0; k < checks_.size(); ++k) {
    if (chosen[k]) out.push_back(checks_[k].id);
  }
  return out;
}

namespace {

CheckResult blank_result(const Check& check, const Instance& inst) {
  CheckResult r;
  r.check_id = check.id;
  r.mode = check.mode;
  r.instance_digest = inst.digest;
  r.counter = inst.counter;
  r.cfg = inst.cfg;
  r.kind = inst.kind;
  return r;
}

// Returns an empty string when the instance can feed the check, else why not.
std::string requirement_gap(const Check& check, const Instance& inst, ErrorCode* code) {
  if (inst.ops.size() < static_cast<std::size_t>(check.arity)) {
    *code = ErrorCode::kArityMismatch;
    return "needs " + std::to_string(check.arity) + " operators";
  }
  if (check.requires_strict_a && !inst.space->strictly_positive()) {
    *code = ErrorCode::kRequiresStrictA;
    return "requires A > 0";
  }
  for (int k = 0; k < check.arity; ++k) {
    if (!inst.ops[static_cast<std::size_t>(k)].admits_adjoint()) {
      *code = ErrorCode::kNoAdjoint;
      return "T" + std::to_string(k + 1) + " admits no A-adjoint";
    }
  }
  return {};
}

void run_evaluator(const Check& check, EvalContext& ctx, CheckResult& r) {
  try {
    const std::optional<Sides> sides = check.evaluator(ctx);
    if (!sides) {
      r.skipped = true;
      r.skip_reason = "precondition not satisfied";
      return;
    }
    r.lhs = sides->lhs;
    r.rhs = sides->rhs;
    r.slack = check.relation == Relation::kIdentity ? -std::abs(r.rhs - r.lhs) : r.rhs - r.lhs;
    r.holds = std::isfinite(r.slack) && r.slack >= -slack_tolerance(r.lhs, r.rhs, ctx.options().slack_rel);
  } catch (const Error& e) {
    r.error = e.what();
    r.holds = false;
    r.lhs = r.rhs = r.slack = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

CheckResult evaluate(std::string_view check_id, const Instance& instance, const EvalOptions& opts) {
  const Check& check = Registry::standard().get(check_id);
  ErrorCode code{};
  if (std::string gap = requirement_gap(check, instance, &code); !gap.empty()) throw Error(code, check.id + " " + gap);
  EvalContext ctx(instance, opts);
  CheckResult r = blank_result(check, instance);
  run_evaluator(check, ctx, r);
  return r;
}

std::vector<CheckResult> evaluate_selection(const std::vector<std::string>& ids, const Instance& instance,
                                            const EvalOptions& opts) {
  const Registry& reg = Registry::standard();
  EvalContext ctx(instance, opts);
  std::vector<CheckResult> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) {
    const Check& check = reg.get(id);
    CheckResult r = blank_result(check, instance);
    ErrorCode code{};
    if (std::string gap = requirement_gap(check, instance, &code); !gap.empty()) {
      r.skipped = true;
      r.skip_reason = gap;
    } else {
      run_evaluator(check, ctx, r);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t VerificationReport::assert_violations() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.mode == CheckMode::kAssert ? c.violations : 0;
  return n;
}

std::size_t VerificationReport::audit_violations() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.mode == CheckMode::kAudit ? c.violations : 0;
  return n;
}

const CheckAggregate* VerificationReport::find(std::string_view id) const {
  for (const auto& c : checks) {
    if (c.check_id == id) return &c;
  }
  return nullptr;
}

std::string antidiagonal_weight_note() {
  return "lem0002-lower/lem0002-upper use the diagonal weight B = diag(A, A); the antidiagonal weight "
         "[[0, A], [A, 0]] is indefinite, induces no semi-inner product and is not evaluated.";
}

VerificationReport aggregate(const std::vector<std::string>& ids, std::vector<std::vector<CheckResult>> per_instance,
                             bool keep_records) {
  constexpr std::size_t kMaxViolationRecords = 100;
  const Registry& reg = Registry::standard();
  VerificationReport report;
  report.notes.push_back(antidiagonal_weight_note());
  for (const std::string& id : ids) {
    const Check& check = reg.get(id);
    CheckAggregate agg;
    agg.check_id = check.id;
    agg.mode = check.mode;
    agg.relation = check.relation;
    agg.statement = check.statement;
    report.checks.push_back(std::move(agg));
  }
  for (auto& results : per_instance) {
    for (std::size_t k = 0; k < results.size() && k < report.checks.size(); ++k) {
      CheckAggregate& agg = report.checks[k];
      const CheckResult& r = results[k];
      ++agg.instances;
      if (r.skipped) {
        ++agg.skipped;
        continue;
      }
      if (r.holds) {
        ++agg.passes;
      } else {
        ++agg.violations;
        if (agg.violation_records.size() < kMaxViolationRecords) agg.violation_records.push_back(r);
      }
      if (std::isfinite(r.slack) && (!agg.min_slack || r.slack < *agg.min_slack)) {
        agg.min_slack = r.slack;
        agg.tightest = r;
      }
    }
    if (keep_records) {
      for (auto& r : results) report.records.push_back(std::move(r));
    }
  }
  return report;
}

namespace {

VerificationReport run_impl(const InstanceStream& stream, const std::vector<std::string>& selection,
                            const RunOptions& opts, bool parallel) {
  const std::vector<std::string> ids = Registry::standard().resolve(selection);
  const auto start = std::chrono::steady_clock::now();
  const auto count = static_cast<std::int64_t>(stream.count);
  std::vector<std::vector<CheckResult>> per_instance(stream.count);

  auto work = [&](std::int64_t k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      const Instance inst = stream.at(idx);
      per_instance[idx] = evaluate_selection(ids, inst, opts.eval);
    } catch (const Error& e) {
      std::vector<CheckResult> failed;
      for (const std::string& id : ids) {
        CheckResult r;
        r.check_id = id;
        r.mode = Registry::standard().get(id).mode;
        r.counter = idx;
        r.cfg = stream.config_at(idx);
        r.kind = stream.kind_at(idx);
        r.holds = false;
        r.error = e.what();
        r.lhs = r.rhs = r.slack = std::numeric_limits<double>::quiet_NaN();
        failed.push_back(std::move(r));
      }
      per_instance[idx] = std::move(failed);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) work(k);
  } else {
    for (std::int64_t k = 0; k < count; ++k) work(k);
  }

  VerificationReport report = aggregate(ids, std::move(per_instance), opts.keep_records);
  report.master_seed = stream.master_seed;
  report.profile = stream.profile.name;
  report.dims = stream.profile.dims;
  for (const RankRule& r : stream.profile.ranks) report.ranks.push_back(r.to_string());
  report.count = stream.count;
  report.slack_rel = opts.eval.slack_rel;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

VerificationReport run_registry(const InstanceStream& stream, const std::vector<std::string>& selection,
                                const RunOptions& opts) {
  return run_impl(stream, selection, opts, true);
}

VerificationReport run_registry_serial(const InstanceStream& stream, const std::vector<std::string>& selection,
                                       const RunOptions& opts) {
  return run_impl(stream, selection, opts, false);
}

}  // namespace semiradius
