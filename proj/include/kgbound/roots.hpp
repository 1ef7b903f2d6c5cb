#pragma once

#include <functional>

namespace kgb {

struct RootResult {
  double root = 0.0;
  double f_root = 0.0;
  int iterations = 0;
};

/// Brent's method on a sign-changing bracket [a, b]. Stops once the bracket
/// half-width is below abs_tol + rel_tol * |x|, or f vanishes exactly.
/// Throws SolverError(invalid_argument) if f(a) and f(b) share a sign.
RootResult brent_root(const std::function<double(double)>& f, double a, double b, double rel_tol,
                      double abs_tol = 0.0, int max_iter = 200);

}  // namespace kgb
