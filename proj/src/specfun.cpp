#include "kgbound/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kgbound/core_model.hpp"

namespace kgb {
namespace {

// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DoubleDouble add(DoubleDouble x, DoubleDouble y) {
  DoubleDouble s = two_sum(x.hi, y.hi);
  DoubleDouble t = two_sum(x.lo, y.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble mul(DoubleDouble x, DoubleDouble y) {
  DoubleDouble p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo);
}

DoubleDouble div(DoubleDouble x, DoubleDouble y) {
  const double q1 = x.hi / y.hi;
  DoubleDouble r = add(x, mul({-q1, 0.0}, y));
  const double q2 = r.hi / y.hi;
  r = add(r, mul({-q2, 0.0}, y));
  const double q3 = r.hi / y.hi;
  return add(quick_two_sum(q1, q2), {q3, 0.0});
}

bool is_non_positive_integer(double v) { return v <= 0.0 && std::floor(v) == v; }

void check_args(double b, double z) {
  if (is_non_positive_integer(b)) {
    std::ostringstream msg;
    msg << "kummer_m: b = " << b << " is a pole (non-positive integer)";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
  if (!std::isfinite(z) || z < 0.0) {
    std::ostringstream msg;
    msg << "kummer_m: z = " << z << " must be finite and non-negative";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
}

double series(double a, double b, double z) {
  constexpr int kMaxTerms = 100000;
  DoubleDouble sum{1.0, 0.0};
  DoubleDouble term{1.0, 0.0};
  for (int k = 0; k < kMaxTerms; ++k) {
    const double kk = static_cast<double>(k);
    // term_{k+1} = term_k * (a+k) z / ((b+k)(k+1))
    term = mul(term, mul(two_sum(a, kk), {z, 0.0}));
    term = div(term, mul(two_sum(b, kk), {kk + 1.0, 0.0}));
    sum = add(sum, term);
    if (term.hi == 0.0) return sum.hi;
    // Terms may grow before they decay; only stop once they are shrinking.
    const bool past_peak = std::abs(a + kk) * z < std::abs(b + kk) * (kk + 1.0);
    if (past_peak && std::abs(term.hi) <= 1e-17 * std::max(1.0, std::abs(sum.hi))) {
      return sum.hi + sum.lo;
    }
  }
  throw SolverError(ErrorKind::overflow, "kummer_m: series did not converge");
}

}  // namespace

double pochhammer(double a, unsigned k) {
  double result = 1.0;
  for (unsigned i = 0; i < k; ++i) result *= a + static_cast<double>(i);
  return result;
}

double kummer_m_polynomial(unsigned n, double b, double z) {
  check_args(b, z);
  DoubleDouble sum{1.0, 0.0};
  DoubleDouble term{1.0, 0.0};
  const double a = -static_cast<double>(n);
  for (unsigned k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    // a + k is an exact integer; b + k is formed exactly as a double-double.
    term = mul(term, two_prod(a + kk, z));
    term = div(term, mul(two_sum(b, kk), {kk + 1.0, 0.0}));
    sum = add(sum, term);
  }
  return sum.hi + sum.lo;
}

double kummer_m_polynomial_derivative(unsigned n, double b, double z, unsigned order) {
  if (order > n) {
    check_args(b, z);
    return 0.0;
  }
  // j-th derivative: (a)_j / (b)_j M(a + j, b + j; z) with a = -n.
  const double a = -static_cast<double>(n);
  const double factor = pochhammer(a, order) / pochhammer(b, order);
  return factor * kummer_m_polynomial(n - order, b + order, z);
}

double kummer_m(const KummerArgs& args) {
  check_args(args.b, args.z);
  if (is_non_positive_integer(args.a)) {
    const double n = -args.a;
    if (n > static_cast<double>(std::numeric_limits<unsigned>::max())) {
      throw SolverError(ErrorKind::invalid_argument, "kummer_m: polynomial degree too large");
    }
    return kummer_m_polynomial(static_cast<unsigned>(n), args.b, args.z);
  }
  return series(args.a, args.b, args.z);
}

}  // namespace kgb
