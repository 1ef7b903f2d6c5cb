#include "kgbound/quadrature.hpp"

#include <cmath>
#include <vector>

#include "kgbound/core_model.hpp"

namespace kgb {

double simpson_uniform(std::span<const double> values, double step) {
  const std::size_t n = values.size();
  if (n < 2) throw SolverError(ErrorKind::invalid_argument, "simpson_uniform: need >= 2 samples");
  if (n == 2) return 0.5 * step * (values[0] + values[1]);

  std::size_t simpson_end = n;  // one past the last sample handled by the 1/3 rule
  double tail = 0.0;
  if (n % 2 == 0) {
    simpson_end = n - 3;
    tail = 3.0 * step / 8.0 *
           (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1]);
  }
  if (simpson_end < 3) return tail;  // n == 4: pure 3/8 rule

  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < simpson_end; ++i) (i % 2 ? odd : even) += values[i];
  return step / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[simpson_end - 1]) + tail;
}

QuadratureResult simpson_doubling(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, std::size_t initial_intervals,
                                  std::size_t max_intervals) {
  std::size_t intervals = initial_intervals + initial_intervals % 2;
  double h = (b - a) / static_cast<double>(intervals);

  // Keep the sample sums so that each doubling only evaluates the new midpoints.
  double ends = f(a) + f(b);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    (i % 2 ? odd : even) += f(a + h * static_cast<double>(i));
  }
  double estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);

  while (intervals < max_intervals) {
    intervals *= 2;
    h *= 0.5;
    even += odd;
    odd = 0.0;
    for (std::size_t i = 1; i < intervals; i += 2) odd += f(a + h * static_cast<double>(i));
    const double next = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const bool done = std::abs(next - estimate) <= rel_tol * std::abs(next);
    estimate = next;
    if (done) return {estimate, intervals, true};
  }
  return {estimate, intervals, false};
}

}  // namespace kgb
