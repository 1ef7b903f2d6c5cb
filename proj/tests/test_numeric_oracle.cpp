#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "kgbound/analytic_solver.hpp"
#include "kgbound/numeric_oracle.hpp"

using namespace kgb;

namespace {

const PhysicalParams kParams{120.0, 30.0, 1.0, 200.0};
const EnergyScan kNarrow{-260.0, -240.0, 200};

OracleConfig narrow(OracleVariant variant = OracleVariant::approx) {
  OracleConfig cfg = default_oracle_config(kNarrow);
  cfg.variant = variant;
  return cfg;
}

}  // namespace

TEST_CASE("operator dimension counts interior nodes") {
  const RadialOperator op(kParams, 0, {1e-3, 5.0, 400}, OracleVariant::approx, SolverMode::derived);
  CHECK(op.dimension() == 398);
  CHECK(assemble_operator(kParams, 0, -250.0, narrow(), SolverMode::derived).size() == 3998);
}

TEST_CASE("bracket reduces to the free operator without well or field") {
  const PhysicalParams free{120.0, 0.0, 1.0, 0.0};
  for (double r : {0.1, 0.7, 2.0}) {
    for (OracleVariant variant : {OracleVariant::approx, OracleVariant::exact_regularized}) {
      CHECK(radial_bracket(r, free, 2, -150.0, variant, SolverMode::derived) ==
            doctest::Approx(150.0 * 150.0 - 120.0 * 120.0 - 4.0 / (r * r)));
    }
  }
}

TEST_CASE("approximate and exact brackets agree at r0") {
  for (SolverMode mode : {SolverMode::derived, SolverMode::paper_literal}) {
    const PhysicalParams p{120.0, 30.0, 0.8, 200.0};
    CHECK(radial_bracket(p.r0, p, 1, -250.0, OracleVariant::approx, mode) ==
          doctest::Approx(radial_bracket(p.r0, p, 1, -250.0, OracleVariant::exact_regularized, mode)));
  }
}

TEST_CASE("exact bracket carries (E - V)^2 in full") {
  const double r = 0.6;
  const double e = -240.0;
  const double v = -kParams.Z0 * kParams.r0 / (r * r);
  const double expected = (e - v) * (e - v) - kParams.m0 * kParams.m0 - 1.0 / (r * r) + 2.0 * kParams.B0 -
                          kParams.B0 * kParams.B0 * r * r;
  CHECK(radial_bracket(r, kParams, 1, e, OracleVariant::exact_regularized, SolverMode::derived) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("operator at B0 = 0 depends on m only through m^2") {
  const PhysicalParams p{120.0, 30.0, 1.0, 0.0};
  const RadialGrid grid{1e-3, 5.0, 300};
  const SymTridiagonal plus = RadialOperator(p, 2, grid, OracleVariant::approx, SolverMode::derived).matrix(-200.0);
  const SymTridiagonal minus = RadialOperator(p, -2, grid, OracleVariant::approx, SolverMode::derived).matrix(-200.0);
  CHECK(plus.diag == minus.diag);
  CHECK(plus.off == minus.off);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(require_valid_grid({0.0, 5.0, 4000}), SolverError);
  CHECK_THROWS_AS(require_valid_grid({1.0, 0.5, 4000}), SolverError);
  CHECK_THROWS_AS(require_valid_grid({1e-3, 5.0, 199}), SolverError);
  CHECK_NOTHROW(require_valid_grid({1e-3, 5.0, 200}));
  CHECK(doubled({1e-3, 5.0, 4000}).n_points == 7999);
}

TEST_CASE("count_nodes ignores negligible entries") {
  const std::vector<double> v{0.0, 1.0, 2.0, -1.0, -3.0, 1e-12, -1e-12, 0.5};
  CHECK(count_nodes(v) == 2);
  CHECK(count_nodes(v, 0.0) == 4);
  CHECK(count_nodes(std::vector<double>{1.0, 2.0}) == 0);
}

TEST_CASE("lambda(E) nearly vanishes at the analytic energy") {
  const BoundState analytic = solve_level({kParams, {0, 0}, SolverMode::derived, default_energy_scan(kParams, 0, SolverMode::derived)});
  const OracleConfig cfg = narrow();
  const double at_root = singularity_indicator(kParams, 0, analytic.energy, cfg, SolverMode::derived);
  const double below = singularity_indicator(kParams, 0, analytic.energy - 0.5, cfg, SolverMode::derived);
  const double above = singularity_indicator(kParams, 0, analytic.energy + 0.5, cfg, SolverMode::derived);
  CHECK(std::abs(at_root) < 1e-3 * std::min(std::abs(below), std::abs(above)));
  CHECK((below > 0.0) != (above > 0.0));
}

TEST_CASE("approx oracle reproduces the analytic levels") {
  for (int m : {-1, 0, 1}) {
    const OracleSpectrum spectrum = oracle_levels(kParams, m, narrow(), SolverMode::derived, 2);
    CHECK(spectrum.warnings.empty());
    REQUIRE(spectrum.levels.size() >= 3);
    for (int n = 0; n <= 2; ++n) {
      const OracleLevel& level = spectrum.levels[static_cast<std::size_t>(n)];
      CHECK(level.node_count == n);
      CHECK(level.state.source == LevelSource::oracle_approx);
      CHECK(level.grid_error_estimate > 0.0);
      const BoundState analytic =
          solve_level({kParams, {n, m}, SolverMode::derived, default_energy_scan(kParams, m, SolverMode::derived)});
      CHECK(std::abs(level.state.energy - analytic.energy) <= 1e-4 * std::abs(analytic.energy));
    }
  }
}

TEST_CASE("node count follows energy order") {
  OracleConfig cfg = narrow();
  cfg.richardson = false;
  const OracleSpectrum spectrum = oracle_levels(kParams, 0, cfg, SolverMode::derived, -1);
  REQUIRE(spectrum.levels.size() >= 5);
  for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
    CHECK(spectrum.levels[k].node_count == static_cast<int>(k));
    if (k > 0) CHECK(spectrum.levels[k].state.energy < spectrum.levels[k - 1].state.energy);
  }
}

TEST_CASE("second-order grid convergence") {
  OracleConfig cfg = narrow();
  cfg.richardson = false;
  const BoundState analytic = solve_level({kParams, {0, 0}, SolverMode::derived, default_energy_scan(kParams, 0, SolverMode::derived)});
  std::vector<double> energies;
  RadialGrid grid{1e-3, 5.0, 1000};
  for (int level = 0; level < 3; ++level) {
    cfg.grid = grid;
    energies.push_back(oracle_levels(kParams, 0, cfg, SolverMode::derived, 0).levels.at(0).state.energy);
    grid = doubled(grid);
  }
  const double ratio = (energies[0] - energies[1]) / (energies[1] - energies[2]);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
  const double err_coarse = std::abs(energies[1] - analytic.energy);
  const double err_fine = std::abs(energies[2] - analytic.energy);
  CHECK(err_coarse / err_fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("Richardson estimate is the doubled-grid difference") {
  const OracleLevel level = oracle_levels(kParams, 0, narrow(), SolverMode::derived, 0).levels.at(0);
  const double fine = relocate_level(kParams, 0, doubled(narrow().grid), OracleVariant::approx, SolverMode::derived,
                                     level.unextrapolated_energy, 0.5);
  CHECK(level.grid_error_estimate == doctest::Approx(std::abs(fine - level.unextrapolated_energy)).epsilon(1e-6));
  CHECK(level.state.energy == doctest::Approx(fine + (fine - level.unextrapolated_energy) / 3.0).epsilon(1e-12));
}

TEST_CASE("window without levels reports NoBoundState") {
  OracleConfig cfg = default_oracle_config({-200.0, -50.0, 100});
  try {
    (void)oracle_levels(kParams, 0, cfg, SolverMode::derived, 2);
    FAIL("expected NoBoundState");
  } catch (const SolverError& err) {
    CHECK(err.kind() == ErrorKind::no_bound_state);
  }
}

TEST_CASE("invalid scan windows are rejected") {
  CHECK_THROWS_AS(oracle_levels(kParams, 0, default_oracle_config({-100.0, -200.0, 10}), SolverMode::derived, 0),
                  SolverError);
  CHECK_THROWS_AS(oracle_levels(kParams, 0, default_oracle_config({-100.0, 10.0, 10}), SolverMode::derived, 0),
                  SolverError);
}

TEST_CASE("exact-regularized ground level moves monotonically with the cutoff") {
  std::vector<double> energies;
  for (double r_min : {0.02, 0.05, 0.1}) {
    OracleConfig cfg = narrow(OracleVariant::exact_regularized);
    cfg.grid.r_min = r_min;
    cfg.richardson = false;
    const OracleSpectrum spectrum = oracle_levels(kParams, 0, cfg, SolverMode::derived, 0);
    REQUIRE(spectrum.levels.size() == 1);
    CHECK(spectrum.levels[0].state.source == LevelSource::oracle_exact_regularized);
    energies.push_back(spectrum.levels[0].state.energy);
  }
  const bool decreasing = energies[0] >= energies[1] && energies[1] >= energies[2];
  const bool increasing = energies[0] <= energies[1] && energies[1] <= energies[2];
  CHECK((decreasing || increasing));
  MESSAGE("exact-regularized E0: " << energies[0] << " " << energies[1] << " " << energies[2]);
}

TEST_CASE("oracle results are deterministic") {
  const OracleSpectrum a = oracle_levels(kParams, 1, narrow(), SolverMode::derived, 1);
  const OracleSpectrum b = oracle_levels(kParams, 1, narrow(), SolverMode::derived, 1);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) CHECK(a.levels[i].state.energy == b.levels[i].state.energy);
}
