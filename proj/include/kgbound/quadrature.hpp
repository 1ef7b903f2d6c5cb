#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace kgb {

/// Composite Simpson rule over uniformly spaced samples. An even number of
/// samples closes the last three intervals with Simpson's 3/8 rule.
/// Requires at least 3 samples (2 falls back to the trapezoid rule).
double simpson_uniform(std::span<const double> values, double step);

struct QuadratureResult {
  double value = 0.0;
  std::size_t intervals = 0;
  bool converged = false;
};

/// Composite Simpson on [a, b], doubling the interval count from
/// `initial_intervals` until successive estimates differ by less than
/// `rel_tol` relative, or `max_intervals` is reached.
QuadratureResult simpson_doubling(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, std::size_t initial_intervals = 64,
                                  std::size_t max_intervals = std::size_t{1} << 22);

}  // namespace kgb
