#include "kgbound/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgbound/core_model.hpp"

namespace kgb {
namespace {

double pivot_floor(const SymTridiagonal& t) {
  double max_off_sq = 0.0;
  for (double e : t.off) max_off_sq = std::max(max_off_sq, e * e);
  return std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
}

void require_shape(const SymTridiagonal& t) {
  if (t.diag.empty() || t.off.size() + 1 != t.diag.size()) {
    throw SolverError(ErrorKind::invalid_argument, "SymTridiagonal: off-diagonal must have size n - 1");
  }
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double shift) {
  require_shape(t);
  const double pivmin = pivot_floor(t);
  std::size_t count = 0;
  double q = t.diag[0] - shift;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    const double e = t.off[i - 1];
    q = t.diag[i] - shift - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
  require_shape(t);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  // Widen slightly so the endpoints strictly bracket the spectrum.
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) +
                     std::numeric_limits<double>::min();
  return {lo - pad, hi + pad};
}

double kth_eigenvalue(const SymTridiagonal& t, std::size_t k) {
  require_shape(t);
  if (k >= t.size()) throw SolverError(ErrorKind::invalid_argument, "kth_eigenvalue: index out of range");
  auto [lo, hi] = gershgorin_bounds(t);
  // Sturm counts resolve eigenvalues only to about eps * ||T||; bisecting
  // further near zero would walk down to denormals.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double abs_tol = eps * std::max(std::abs(lo), std::abs(hi));
  // Invariant: count(lo) <= k < count(hi).
  for (int iter = 0; iter < 2200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= abs_tol + 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues(const SymTridiagonal& t) {
  std::vector<double> values(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) values[k] = kth_eigenvalue(t, k);
  return values;
}

double eigenvalue_nearest(const SymTridiagonal& t, double target) {
  const std::size_t below = sturm_count(t, target);
  double best = std::numeric_limits<double>::quiet_NaN();
  if (below > 0) best = kth_eigenvalue(t, below - 1);
  if (below < t.size()) {
    const double above = kth_eigenvalue(t, below);
    if (std::isnan(best) || std::abs(above - target) < std::abs(best - target)) best = above;
  }
  return best;
}

std::vector<double> solve_shifted(const SymTridiagonal& t, double shift, std::span<const double> rhs) {
  require_shape(t);
  const std::size_t n = t.size();
  if (rhs.size() != n) throw SolverError(ErrorKind::invalid_argument, "solve_shifted: rhs size mismatch");

  // Gaussian elimination with partial pivoting (LAPACK gtsv layout): after a
  // row interchange, dl[i] holds the fill-in on the second superdiagonal.
  std::vector<double> d(n), dl(t.off), du(t.off), b(rhs.begin(), rhs.end());
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = t.diag[i] - shift;
    scale = std::max(scale, std::abs(d[i]));
  }
  for (double e : t.off) scale = std::max(scale, std::abs(e));
  const double tiny = std::max(scale, std::numeric_limits<double>::min()) *
                      std::numeric_limits<double>::epsilon();
  auto nudge = [tiny](double& pivot) {
    if (std::abs(pivot) < tiny) pivot = std::signbit(pivot) ? -tiny : tiny;
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool last = i + 2 == n;
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      nudge(d[i]);
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      dl[i] = 0.0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (!last) {
        dl[i] = du[i + 1];
        du[i + 1] = -fact * dl[i];
      } else {
        dl[i] = 0.0;
      }
      du[i] = temp;
      const double b_i = b[i];
      b[i] = b[i + 1];
      b[i + 1] = b_i - fact * b[i + 1];
    }
  }
  nudge(d[n - 1]);

  std::vector<double> x(n);
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) {
    x[i] = (b[i] - du[i] * x[i + 1] - dl[i] * x[i + 2]) / d[i];
  }
  return x;
}

std::vector<double> inverse_iteration(const SymTridiagonal& t, double shift, int iterations) {
  const std::size_t n = t.size();
  // Deterministic start vector with no special symmetry.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);

  auto normalize = [](std::vector<double>& w) {
    double norm = 0.0;
    double big = 0.0;
    for (double value : w) big = std::max(big, std::abs(value));
    if (big == 0.0 || !std::isfinite(big)) {
      throw SolverError(ErrorKind::overflow, "inverse_iteration: degenerate iterate");
    }
    for (double& value : w) {
      value /= big;
      norm += value * value;
    }
    norm = std::sqrt(norm);
    for (double& value : w) value /= norm;
  };
  normalize(v);
  for (int it = 0; it < iterations; ++it) {
    v = solve_shifted(t, shift, v);
    normalize(v);
  }
  // Sign convention: first component above 1e-8 of the peak is positive.
  double big = 0.0;
  for (double value : v) big = std::max(big, std::abs(value));
  for (double value : v) {
    if (std::abs(value) > 1e-8 * big) {
      if (value < 0.0) {
        for (double& w : v) w = -w;
      }
      break;
    }
  }
  return v;
}

}  // namespace kgb
