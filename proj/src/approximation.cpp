#include "kgbound/approximation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace kgb {
namespace {

void require_positive_x(double x, const char* where) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << where << ": x must be positive and finite, got " << x;
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
}

// Gaussian elimination with partial pivoting on a 3x3 system.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = col + 1; row < 3; ++row) {
      const double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < 3; ++k) a[row][k] -= f * a[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  std::array<double, 3> x{};
  for (int row = 2; row >= 0; --row) {
    double s = rhs[row];
    for (int k = row + 1; k < 3; ++k) s -= a[row][k] * x[k];
    x[row] = s / a[row][row];
  }
  return x;
}

}  // namespace

double potential_prefactor(const PhysicalParams& p, SolverMode mode) {
  return mode == SolverMode::derived ? 0.25 : 0.25 * p.r0 * p.r0;
}

double exact_u(double x, const PhysicalParams& p, SolverMode mode) {
  require_positive_x(x, "exact_u");
  return potential_prefactor(p, mode) * p.Z0 * p.Z0 / (x * x);
}

ApproxCoefficients match_coefficients(const PhysicalParams& p) {
  // Rows: value, first and second derivative at x = 1 of the basis {1, x, 1/x}.
  const std::array<std::array<double, 3>, 3> basis{{
      {1.0, 1.0, 1.0},
      {0.0, 1.0, -1.0},
      {0.0, 0.0, 2.0},
  }};
  // Same derivatives of Z0^2 / x^2 at x = 1.
  const double z0_sq = p.Z0 * p.Z0;
  const std::array<double, 3> target{z0_sq, -2.0 * z0_sq, 6.0 * z0_sq};
  const auto a = solve3(basis, target);
  return {a[0], a[1], a[2]};
}

double approx_u(double x, const ApproxCoefficients& coeffs, const PhysicalParams& p,
                SolverMode mode) {
  require_positive_x(x, "approx_u");
  return potential_prefactor(p, mode) * (coeffs.A1 + coeffs.A2 * x + coeffs.A3 / x);
}

ApproxErrorReport error_report(const PhysicalParams& p, SolverMode mode, RadialWindow window,
                               std::size_t n_points) {
  return error_report(p, match_coefficients(p), mode, window, n_points);
}

ApproxErrorReport error_report(const PhysicalParams& p, const ApproxCoefficients& coeffs,
                               SolverMode mode, RadialWindow window, std::size_t n_points) {
  if (!(window.r_lo > 0.0) || !(window.r_hi > window.r_lo) || !std::isfinite(window.r_hi)) {
    std::ostringstream msg;
    msg << "error_report: window (" << window.r_lo << ", " << window.r_hi
        << ") must satisfy 0 < r_lo < r_hi";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
  if (n_points < 2) throw SolverError(ErrorKind::invalid_argument, "error_report: n_points must be >= 2");
  if (!(p.r0 > 0.0) || !(p.Z0 > 0.0)) {
    throw SolverError(ErrorKind::invalid_argument, "error_report: Z0 and r0 must be positive");
  }

  const RadialGrid grid{window.r_lo, window.r_hi, n_points};
  std::vector<double> r(n_points), u(n_points), ua(n_points), rel(n_points);
  double sup = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    r[i] = grid.at(i);
    const double x = r[i] * r[i] / (p.r0 * p.r0);
    u[i] = exact_u(x, p, mode);
    ua[i] = approx_u(x, coeffs, p, mode);
    if (i > 0 && (ua[i] == 0.0 || std::signbit(ua[i]) != std::signbit(ua[i - 1]))) {
      std::ostringstream msg;
      msg << "error_report: U_a changes sign near r = " << r[i]
          << " fm; relative error is undefined there";
      throw SolverError(ErrorKind::window_sign_change, msg.str());
    }
    rel[i] = std::abs(ua[i] - u[i]) / std::abs(u[i]);
    sup = std::max(sup, rel[i]);
    sum_sq += rel[i] * rel[i];
  }

  ApproxErrorReport report;
  report.window = window;
  report.sup_rel_error = sup;
  report.l2_rel_error = std::sqrt(sum_sq / static_cast<double>(n_points));
  report.exact = SampledFunction(r, std::move(u));
  report.approx = SampledFunction(r, std::move(ua));
  report.rel_error = SampledFunction(std::move(r), std::move(rel));
  return report;
}

}  // namespace kgb
