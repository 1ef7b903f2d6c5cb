#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "kgbound/analytic_solver.hpp"
#include "kgbound/quadrature.hpp"

using namespace kgb;

namespace {

const PhysicalParams kParams{120.0, 30.0, 1.0, 200.0};

QuantizationProblem problem(const PhysicalParams& p, int n, int m, SolverMode mode = SolverMode::derived) {
  return {p, {n, m}, mode, default_energy_scan(p, m, mode)};
}

// Quantization condition from the reduced coefficients, written out
// directly, and solved by plain bisection.
double reference_residual(const PhysicalParams& p, int n, int m, double e) {
  const double beta1_sq = 0.25 * p.r0 * p.r0 * (e * e - p.m0 * p.m0 + 2.0 * m * p.B0) - 0.75 * p.Z0 * p.Z0;
  const double beta2 = 0.5 * std::sqrt(p.B0 * p.B0 * std::pow(p.r0, 4) - p.Z0 * p.Z0);
  const double kappa = std::sqrt(0.25 * m * m - 0.5 * p.Z0 * p.r0 * e - 0.75 * p.Z0 * p.Z0);
  return beta1_sq / (2.0 * beta2) - kappa - n - 0.5;
}

double reference_level(const PhysicalParams& p, int n, int m, double lo, double hi) {
  double flo = reference_residual(p, n, m, lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = reference_residual(p, n, m, mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RadialGrid fine_grid(const BoundState& s, const PhysicalParams& p, std::size_t points = 20001) {
  return {0.0, suggested_r_max(p, *s.coeffs, s.qn.n), points};
}

}  // namespace

TEST_CASE("coefficients at the reference parameters") {
  const CoefficientSet c = coefficients(kParams, 0, -247.0, SolverMode::derived);
  CHECK(c.beta2 == doctest::Approx(std::sqrt(9775.0)).epsilon(1e-14));
  CHECK(c.kappa_bar == doctest::Approx(std::sqrt(0.5 * 30.0 * 247.0 - 675.0)).epsilon(1e-14));
  CHECK(c.beta1_sq == doctest::Approx(0.25 * (247.0 * 247.0 - 14400.0) - 675.0).epsilon(1e-14));
  CHECK(c.mode == SolverMode::derived);
}

TEST_CASE("ground states agree with an independent bisection") {
  for (int m : {-1, 0, 1}) {
    for (int n = 0; n <= 2; ++n) {
      const BoundState s = solve_level(problem(kParams, n, m));
      const double ref = reference_level(kParams, n, m, -300.0, -200.0);
      CHECK(s.energy == doctest::Approx(ref).epsilon(1e-11));
      CHECK(s.qn.n == n);
      CHECK(s.source == LevelSource::analytic);
      CHECK(std::abs(s.residual) <= 1e-8);
    }
  }
}

TEST_CASE("levels deepen with n and split with m") {
  const double e0 = solve_level(problem(kParams, 0, 0)).energy;
  const double e1 = solve_level(problem(kParams, 1, 0)).energy;
  const double e0_plus = solve_level(problem(kParams, 0, 1)).energy;
  const double e0_minus = solve_level(problem(kParams, 0, -1)).energy;
  CHECK(e0 == doctest::Approx(-247.063669007).epsilon(1e-11));
  CHECK(e1 < e0);
  CHECK(e0_plus > e0);
  CHECK(e0_minus < e0);
}

TEST_CASE("F(E; n + 1) = F(E; n) - 1") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> energy(-1000.0, -60.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double e = energy(rng);
    const int n = static_cast<int>(rng() % 8);
    const int m = static_cast<int>(rng() % 5) - 2;
    const double f_n = quantization_residual(problem(kParams, n, m), e);
    const double f_next = quantization_residual(problem(kParams, n + 1, m), e);
    CHECK(f_next == doctest::Approx(f_n - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("derived and paper-literal coefficients coincide at r0 = 1") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> energy(-1200.0, -50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double e = energy(rng);
    const int m = static_cast<int>(rng() % 7) - 3;
    const CoefficientSet d = coefficients(kParams, m, e, SolverMode::derived);
    const CoefficientSet l = coefficients(kParams, m, e, SolverMode::paper_literal);
    CHECK(l.beta1_sq == doctest::Approx(d.beta1_sq).epsilon(1e-12));
    CHECK(l.beta2 == doctest::Approx(d.beta2).epsilon(1e-12));
    CHECK(l.kappa_bar == doctest::Approx(d.kappa_bar).epsilon(1e-12));
  }
}

TEST_CASE("conventions separate away from r0 = 1") {
  const PhysicalParams p{120.0, 30.0, 0.8, 200.0};
  const CoefficientSet d = coefficients(p, 0, -300.0, SolverMode::derived);
  const CoefficientSet l = coefficients(p, 0, -300.0, SolverMode::paper_literal);
  CHECK(std::abs(d.beta2 - l.beta2) > 1e-3 * d.beta2);
}

TEST_CASE("kappa domain bound") {
  CHECK(kappa_domain_bound(kParams, 0, SolverMode::derived) == doctest::Approx(-45.0));
  CHECK(kappa_domain_bound(kParams, 2, SolverMode::derived) == doctest::Approx((4.0 - 2700.0) / 60.0));
  try {
    (void)coefficients(kParams, 0, -40.0, SolverMode::derived);
    FAIL("expected kappa_domain");
  } catch (const SolverError& err) {
    CHECK(err.kind() == ErrorKind::kappa_domain);
  }
  const EnergyScan scan = default_energy_scan(kParams, 0, SolverMode::derived);
  CHECK(scan.e_min == -1200.0);
  CHECK(scan.e_max < -45.0);
  CHECK(scan.e_max > -45.0 - 1e-6);
}

TEST_CASE("weak field is rejected") {
  const PhysicalParams weak{120.0, 30.0, 1.0, 20.0};
  try {
    (void)coefficients(weak, 0, -200.0, SolverMode::derived);
    FAIL("expected weak_field");
  } catch (const SolverError& err) {
    CHECK(err.kind() == ErrorKind::weak_field);
  }
}

TEST_CASE("window without a root gives NoBoundState") {
  QuantizationProblem prob = problem(kParams, 0, 0);
  prob.scan = {-246.9, -246.1, 50};
  try {
    (void)solve_level(prob);
    FAIL("expected no_bound_state");
  } catch (const SolverError& err) {
    CHECK(err.kind() == ErrorKind::no_bound_state);
  }
  prob.scan = {-40.0, -10.0, 50};  // entirely above the kappa bound
  CHECK_THROWS_AS(solve_level(prob), SolverError);
  prob.scan = {-300.0, -200.0, 5};
  CHECK_THROWS_AS(solve_level(prob), SolverError);
}

TEST_CASE("spectrum collects absent levels without aborting") {
  const SpectrumResult all = solve_spectrum(kParams, SolverMode::derived, 2, {1, -1});
  REQUIRE(all.levels.size() == 6);
  CHECK(all.absent.empty());
  CHECK(all.levels.front().qn.m == -1);
  CHECK(all.levels.back().qn.m == 1);
  CHECK(all.levels.back().qn.n == 2);

  const SpectrumResult partial = solve_spectrum(kParams, SolverMode::derived, 2, {0}, EnergyScan{-248.0, -240.0, 100});
  REQUIRE(partial.levels.size() == 1);
  REQUIRE(partial.absent.size() == 2);
  CHECK(partial.absent[0].qn.n == 1);
  CHECK(partial.absent[0].kind == ErrorKind::no_bound_state);
}

TEST_CASE("ground-state normalization matches the Gamma-function integral") {
  const BoundState s = solve_level(problem(kParams, 0, 0));
  const RadialWavefunction wf = wavefunction(s, kParams, fine_grid(s, kParams, 2001));
  const double k = s.coeffs->kappa_bar;
  const double b = s.coeffs->beta2;
  // integral of x^{2k} e^{-2 b x} dx = Gamma(2k + 1) / (2b)^{2k + 1}; r dr = (r0^2 / 2) dx.
  const double log_integral = std::lgamma(2.0 * k + 1.0) - (2.0 * k + 1.0) * std::log(2.0 * b) +
                              std::log(0.5 * kParams.r0 * kParams.r0);
  CHECK(wf.log_norm_constant == doctest::Approx(-0.5 * log_integral).epsilon(1e-10));
}

TEST_CASE("normalization and charge identities on the sample grid") {
  for (int n = 0; n <= 2; ++n) {
    const BoundState s = solve_level(problem(kParams, n, 0));
    const RadialWavefunction wf = wavefunction(s, kParams, fine_grid(s, kParams));
    const SampledFunction rho = charge_density(wf);
    const auto r = wf.samples.r();
    const auto u = wf.samples.values();
    std::vector<double> norm_integrand(r.size()), charge_integrand(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      norm_integrand[i] = u[i] * u[i] * r[i];
      charge_integrand[i] = rho.values()[i] * r[i];
      CHECK(rho.values()[i] >= 0.0);
    }
    const double h = r[1] - r[0];
    CHECK(simpson_uniform(norm_integrand, h) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(simpson_uniform(charge_integrand, h) == doctest::Approx(-s.energy / kParams.m0).epsilon(1e-8));
  }
}

TEST_CASE("grid too short is detected") {
  const BoundState s = solve_level(problem(kParams, 0, 0));
  try {
    (void)wavefunction(s, kParams, {0.0, 0.5, 101});
    FAIL("expected grid_too_short");
  } catch (const SolverError& err) {
    CHECK(err.kind() == ErrorKind::grid_too_short);
  }
}

TEST_CASE("wavefunction satisfies the approximated radial equation") {
  for (int m : {-1, 0, 1}) {
    for (int n = 0; n <= 2; ++n) {
      const BoundState s = solve_level(problem(kParams, n, m));
      const RadialGrid grid{0.01, suggested_r_max(kParams, *s.coeffs, n), 5001};
      CHECK(scaled_operator_residual(s, kParams, grid) <= 1e-8);
    }
  }
}

TEST_CASE("perturbed energy breaks the radial equation") {
  BoundState s = solve_level(problem(kParams, 0, 0));
  s.energy += 1e-3;
  const RadialGrid grid{0.01, suggested_r_max(kParams, *s.coeffs, 0), 5001};
  CHECK(scaled_operator_residual(s, kParams, grid) > 1e-7);
}

TEST_CASE("ground-state density peaks at r0 sqrt(kappa / beta2)") {
  const BoundState s = solve_level(problem(kParams, 0, 0));
  const RadialWavefunction wf = wavefunction(s, kParams, fine_grid(s, kParams));
  const double expected = kParams.r0 * std::sqrt(s.coeffs->kappa_bar / s.coeffs->beta2);
  const double h = wf.samples.r()[1] - wf.samples.r()[0];
  CHECK(std::abs(peak_radius(charge_density(wf)) - expected) <= h);
}

TEST_CASE("sampled wavefunction has n nodes") {
  for (int n = 0; n <= 2; ++n) {
    const BoundState s = solve_level(problem(kParams, n, 0));
    const RadialWavefunction wf = wavefunction(s, kParams, fine_grid(s, kParams));
    int nodes = 0;
    double last = 0.0;
    for (double v : wf.samples.values()) {
      if (std::abs(v) < 1e-12) continue;
      if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++nodes;
      last = v;
    }
    CHECK(nodes == n);
  }
}

TEST_CASE("solver output is deterministic") {
  const SpectrumResult a = solve_spectrum(kParams, SolverMode::paper_literal, 1, {0, 1});
  const SpectrumResult b = solve_spectrum(kParams, SolverMode::paper_literal, 1, {0, 1});
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) CHECK(a.levels[i].energy == b.levels[i].energy);
}
