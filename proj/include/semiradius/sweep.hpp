#pragma once

// Maximization of a continuous periodic scalar function: a uniform grid
// (evaluated in parallel with OpenMP) followed by golden-section refinement on
// the best brackets. evaluate_grid_serial is the reference the parallel kernel
// is tested against.

#include <functional>
#include <vector>

namespace semiradius {

using ScalarFn = std::function<double(double)>;

struct SweepOptions {
  int grid_points = 720;
  double theta_tol = 1e-10;
  /// Number of best grid local maxima refined unconditionally.
  int refine_brackets = 2;
  /// Any further local maximum within this relative gap of the best grid value
  /// is refined as well.
  double near_tie_rel = 1e-3;
  bool parallel = true;
};

struct SweepResult {
  double value = 0.0;
  double theta = 0.0;
  int evaluations = 0;
};

std::vector<double> evaluate_grid(const ScalarFn& f, double period, int points);
std::vector<double> evaluate_grid_serial(const ScalarFn& f, double period, int points);

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
GoldenResult golden_section_max(const ScalarFn& f, double lo, double hi, double tol);

/// Global maximum of f over one period, f assumed `period`-periodic.
SweepResult maximize_periodic(const ScalarFn& f, double period, const SweepOptions& opts = {});

}  // namespace semiradius
