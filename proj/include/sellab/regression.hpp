#pragma once

#include <span>
#include <vector>

namespace sellab {

/// Least-squares fit of y = constant * x^exponent in log-log coordinates.
struct PowerFit {
  double exponent = 0.0;
  double constant = 0.0;
  double r2 = 0.0;
  double exponent_stderr = 0.0;
  double ci_low = 0.0;  // 95% band on the exponent
  double ci_high = 0.0;
  std::size_t count = 0;
};

/// Non-positive pairs are dropped. Throws InputError with fewer than two
/// usable points or a degenerate x range.
PowerFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

/// Linear-interpolated empirical quantile, q in [0, 1]; values need not be sorted.
double quantile(std::vector<double> values, double q);

}  // namespace sellab
