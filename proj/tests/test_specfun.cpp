#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kgbound/core_model.hpp"
#include "kgbound/specfun.hpp"
#include "oracles.hpp"

using namespace kgb;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.5, 0) == 1.0);
  CHECK(pochhammer(1.0, 5) == doctest::Approx(120.0));
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5));
}

TEST_CASE("low-order polynomials in closed form") {
  CHECK(kummer_m_polynomial(0, 3.0, 7.0) == 1.0);
  CHECK(kummer_m_polynomial(1, 3.0, 7.0) == doctest::Approx(1.0 - 7.0 / 3.0));
  // M(-2, b; z) = 1 - 2z/b + z^2 / (b (b + 1))
  const double b = 4.5;
  const double z = 2.25;
  CHECK(kummer_m_polynomial(2, b, z) == doctest::Approx(1.0 - 2.0 * z / b + z * z / (b * (b + 1.0))).epsilon(1e-15));
}

TEST_CASE("exact zero of M(-1, b; b)") {
  CHECK(kummer_m_polynomial(1, 57.0, 57.0) == 0.0);
}

TEST_CASE("polynomial path matches binary128 summation over the test grid") {
  double worst = 0.0;
  for (unsigned n = 0; n <= oracle::kKummerMaxN; ++n) {
    for (double b : oracle::kKummerB) {
      for (double z : oracle::kKummerZ) {
        const double got = kummer_m_polynomial(n, b, z);
        const double err = oracle::kummer_relative_error(got, oracle::kummer_polynomial_f128(n, b, z));
        worst = std::max(worst, err);
        CHECK_MESSAGE(err <= 1e-12, "n=" << n << " b=" << b << " z=" << z);
      }
    }
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("kummer_m routes integer a to the polynomial") {
  CHECK(kummer_m({-4.0, 10.0, 3.0}) == kummer_m_polynomial(4, 10.0, 3.0));
}

TEST_CASE("series path against closed forms") {
  for (double z : {0.0, 0.3, 2.0, 15.0, 40.0}) {
    CHECK(kummer_m({2.5, 2.5, z}) == doctest::Approx(std::exp(z)).epsilon(1e-13));
    if (z > 0.0) CHECK(kummer_m({1.0, 2.0, z}) == doctest::Approx(std::expm1(z) / z).epsilon(1e-13));
  }
}

TEST_CASE("contiguous recurrence (b-a) M(a-1) + (2a-b+z) M(a) - a M(a+1) = 0") {
  for (unsigned n = 1; n <= oracle::kKummerMaxN; ++n) {
    const double a = -static_cast<double>(n);
    for (double b : oracle::kKummerB) {
      for (double z : oracle::kKummerZ) {
        const double t1 = (b - a) * kummer_m_polynomial(n + 1, b, z);
        const double t2 = (2.0 * a - b + z) * kummer_m_polynomial(n, b, z);
        const double t3 = -a * kummer_m_polynomial(n - 1, b, z);
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        CHECK_MESSAGE(std::abs(t1 + t2 + t3) <= 1e-9 * scale, "n=" << n << " b=" << b << " z=" << z);
      }
    }
  }
}

TEST_CASE("derivatives follow d/dz M(a,b;z) = (a/b) M(a+1,b+1;z)") {
  const unsigned n = 5;
  const double b = 7.0;
  const double z = 1.3;
  const double h = 1e-5;
  const double fd = (kummer_m_polynomial(n, b, z + h) - kummer_m_polynomial(n, b, z - h)) / (2.0 * h);
  CHECK(kummer_m_polynomial_derivative(n, b, z, 1) == doctest::Approx(fd).epsilon(1e-8));
  CHECK(kummer_m_polynomial_derivative(n, b, z, 0) == kummer_m_polynomial(n, b, z));
  CHECK(kummer_m_polynomial_derivative(2, b, z, 3) == 0.0);
  // Second derivative of M(-2, b; z) is 2 / (b (b + 1)).
  CHECK(kummer_m_polynomial_derivative(2, b, z, 2) == doctest::Approx(2.0 / (b * (b + 1.0))));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(kummer_m({1.0, 0.0, 1.0}), SolverError);
  CHECK_THROWS_AS(kummer_m({1.0, -3.0, 1.0}), SolverError);
  CHECK_THROWS_AS(kummer_m({1.0, 2.0, -1.0}), SolverError);
  CHECK_THROWS_AS(kummer_m({1.0, 2.0, std::nan("")}), SolverError);
  CHECK_NOTHROW(kummer_m({1.0, -2.5, 1.0}));
}
