#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance suite. None of these call into the library under test.

#include <cmath>
#include <vector>

namespace oracle {

inline const unsigned kKummerMaxN = 10;
inline const std::vector<double> kKummerB{0.5, 1.0, 3.0, 10.0, 57.0, 100.0};
inline const std::vector<double> kKummerZ{0.0, 0.1, 1.0, 10.0, 50.0};

struct KummerReference {
  double value;
  double largest_term;  ///< magnitude of the biggest summand
};

/// M(-n, b; z) summed term by term in binary128.
inline KummerReference kummer_polynomial_f128(unsigned n, double b, double z) {
  __float128 term = 1;
  __float128 sum = 1;
  __float128 largest = 1;
  for (unsigned k = 0; k < n; ++k) {
    term *= (static_cast<__float128>(k) - static_cast<__float128>(n)) /
            (static_cast<__float128>(b) + static_cast<__float128>(k)) * static_cast<__float128>(z) /
            static_cast<__float128>(k + 1);
    sum += term;
    const __float128 mag = term < 0 ? -term : term;
    if (mag > largest) largest = mag;
  }
  return {static_cast<double>(sum), static_cast<double>(largest)};
}

/// Relative error against the reference; an exactly vanishing reference is
/// judged against the largest summand instead.
inline double kummer_relative_error(double value, const KummerReference& ref) {
  const double scale = ref.value != 0.0 ? std::abs(ref.value) : ref.largest_term;
  return std::abs(value - ref.value) / scale;
}

/// Relative error of the three-term approximation of 1/x^2 with coefficients
/// (-3, 1, 3): x^2 (-3 + x + 3/x) - 1 = (x - 1)^3.
inline double approx_rel_error_closed_form(double x) { return std::abs(std::pow(x - 1.0, 3)); }

}  // namespace oracle
