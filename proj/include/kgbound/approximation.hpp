#pragma once

// Three-term replacement of the 1/x^2 term, A1 + A2 x + A3 / x, matched in
// value and first two derivatives at x = r^2 / r0^2 = 1.

#include <optional>

#include "kgbound/core_model.hpp"

namespace kgb {

struct ApproxCoefficients {
  double A1 = 0.0;  ///< fm^-2
  double A2 = 0.0;  ///< fm^-2
  double A3 = 0.0;  ///< fm^-2
};

/// Mode prefactor multiplying Z0^2 / x^2 and the bracket [A1 + A2 x + A3/x]:
/// 1/4 in derived mode, r0^2/4 in paper-literal mode.
double potential_prefactor(const PhysicalParams& p, SolverMode mode);

/// U(x) = prefactor * Z0^2 / x^2. Throws on x <= 0.
double exact_u(double x, const PhysicalParams& p, SolverMode mode);

/// Solves the 3x3 matching system at x = 1; yields (-3, 1, 3) * Z0^2.
ApproxCoefficients match_coefficients(const PhysicalParams& p);

/// U_a(x) = prefactor * (A1 + A2 x + A3 / x). Throws on x <= 0.
double approx_u(double x, const ApproxCoefficients& coeffs, const PhysicalParams& p,
                SolverMode mode);

struct RadialWindow {
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct ApproxErrorReport {
  RadialWindow window;
  double sup_rel_error = 0.0;
  double l2_rel_error = 0.0;  ///< root mean square of the pointwise relative error
  SampledFunction exact;      ///< U sampled on the r-grid
  SampledFunction approx;     ///< U_a sampled on the r-grid
  SampledFunction rel_error;  ///< |U_a - U| / |U|
};

/// Samples U and U_a on a uniform r-grid over `window` and aggregates the
/// pointwise relative error. Throws SolverError(window_sign_change) when U_a
/// changes sign inside the window; the message carries the crossing radius.
ApproxErrorReport error_report(const PhysicalParams& p, SolverMode mode, RadialWindow window,
                               std::size_t n_points);

/// Same, with caller-supplied coefficients.
ApproxErrorReport error_report(const PhysicalParams& p, const ApproxCoefficients& coeffs,
                               SolverMode mode, RadialWindow window, std::size_t n_points);

}  // namespace kgb
