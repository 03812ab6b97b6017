#include "semiradius/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semiradius/error.hpp"

namespace semiradius {

std::vector<double> evaluate_grid(const ScalarFn& f, double period, int points) {
  std::vector<double> values(static_cast<std::size_t>(points));
  const double step = period / points;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < points; ++k) {
    values[static_cast<std::size_t>(k)] = f(step * k);
  }
  return values;
}

std::vector<double> evaluate_grid_serial(const ScalarFn& f, double period, int points) {
  std::vector<double> values(static_cast<std::size_t>(points));
  const double step = period / points;
  for (int k = 0; k < points; ++k) values[static_cast<std::size_t>(k)] = f(step * k);
  return values;
}

GoldenResult golden_section_max(const ScalarFn& f, double lo, double hi, double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  GoldenResult out;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations = 2;
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }
  if (fc >= fd) {
    out.x = c;
    out.value = fc;
  } else {
    out.x = d;
    out.value = fd;
  }
  return out;
}

SweepResult maximize_periodic(const ScalarFn& f, double period, const SweepOptions& opts) {
  if (opts.grid_points < 3) throw Error(ErrorCode::kInvalidArgument, "grid needs at least 3 points");
  const int n = opts.grid_points;
  const double step = period / n;
  const std::vector<double> grid = opts.parallel ? evaluate_grid(f, period, n) : evaluate_grid_serial(f, period, n);

  // Circular local maxima, best first; ties broken by index for determinism.
  std::vector<int> peaks;
  for (int k = 0; k < n; ++k) {
    const double v = grid[static_cast<std::size_t>(k)];
    if (v >= grid[static_cast<std::size_t>((k + n - 1) % n)] && v >= grid[static_cast<std::size_t>((k + 1) % n)]) {
      peaks.push_back(k);
    }
  }
  if (peaks.empty()) {
    peaks.resize(static_cast<std::size_t>(n));
    std::iota(peaks.begin(), peaks.end(), 0);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&grid](int i, int j) {
    return grid[static_cast<std::size_t>(i)] > grid[static_cast<std::size_t>(j)];
  });

  SweepResult best;
  best.value = grid[static_cast<std::size_t>(peaks.front())];
  best.theta = step * peaks.front();
  best.evaluations = n;
  const double top = best.value;
  const double spread = top - *std::min_element(grid.begin(), grid.end());
  const double tie_gap = opts.near_tie_rel * std::max(std::abs(top), spread);

  for (std::size_t p = 0; p < peaks.size(); ++p) {
    const double v = grid[static_cast<std::size_t>(peaks[p])];
    if (static_cast<int>(p) >= opts.refine_brackets && v < top - tie_gap) break;
    // A plateau has every point flagged; refining a handful is enough.
    if (p >= 16) break;
    const double center = step * peaks[p];
    const GoldenResult g = golden_section_max(f, center - step, center + step, opts.theta_tol);
    best.evaluations += g.evaluations;
    if (g.value > best.value) {
      best.value = g.value;
      best.theta = g.x;
    }
  }
  best.theta = std::fmod(best.theta, period);
  if (best.theta < 0.0) best.theta += period;
  return best;
}

}  // namespace semiradius
