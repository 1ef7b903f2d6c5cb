#pragma once

// Confluent hypergeometric (Kummer) function M(a, b; z) for real arguments.

namespace kgb {

struct KummerArgs {
  double a = 0.0;
  double b = 1.0;  ///< must not be a non-positive integer
  double z = 0.0;  ///< z >= 0
};

/// Rising factorial a (a+1) ... (a+k-1); 1 for k = 0.
double pochhammer(double a, unsigned k);

/// M(-n, b; z) as the finite sum over k <= n of (-n)_k / (b)_k z^k / k!.
///
/// Terms and partial sums are carried in double-double precision, so the
/// result stays accurate through the heavy cancellation of the alternating
/// sum at large z.
double kummer_m_polynomial(unsigned n, double b, double z);

/// Derivative d^j/dz^j M(-n, b; z), via d/dz M(a,b;z) = (a/b) M(a+1,b+1;z).
double kummer_m_polynomial_derivative(unsigned n, double b, double z, unsigned order);

/// General evaluation. Non-positive integer `a` takes the polynomial path;
/// any other `a` sums the power series in double-double until, past the
/// largest term, terms fall below 1e-17 of the running total. Throws SolverError(invalid_argument) when b is a
/// non-positive integer or z is negative or non-finite.
double kummer_m(const KummerArgs& args);

}  // namespace kgb
