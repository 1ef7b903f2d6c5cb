#pragma once

// Side-by-side comparison of an analytic level with the finite-difference
// oracle, in both the approximated and the regularized exact variants.

#include <optional>
#include <string>
#include <vector>

#include "kgbound/analytic_solver.hpp"
#include "kgbound/numeric_oracle.hpp"

namespace kgb {

/// Inner cutoffs, as fractions of r0, for the regularized exact variant.
inline const std::vector<double> kDefaultExactCutoffs{0.02, 0.05, 0.1};

/// Reference energy window and density peak, reported for comparison only.
inline constexpr double kQuotedEnergyLow = -120.0;
inline constexpr double kQuotedEnergyHigh = -90.0;
inline constexpr double kQuotedDensityPeak = 0.2;

struct ExactRegularizedLevel {
  double r_min = 0.0;
  std::optional<double> energy;   ///< level with node count n, if any
  std::optional<int> node_count;
  std::size_t levels_in_window = 0;  ///< levels with at most n nodes
  std::string note;
};

struct ComparisonRecord {
  PhysicalParams params;
  QuantumNumbers qn;
  SolverMode mode = SolverMode::derived;

  std::optional<double> e_analytic;
  std::optional<double> e_oracle_approx;
  std::optional<double> abs_diff;
  std::optional<double> rel_diff;
  double grid_error_estimate = 0.0;
  std::optional<int> node_count;
  std::vector<ExactRegularizedLevel> oracle_exact;
  /// |E_exact - E_approx| at matched node count, for the smallest cutoff that has one.
  std::optional<double> approximation_error_estimate;

  std::optional<double> density_peak_r;
  std::vector<std::string> notes;
};

ComparisonRecord compare_report(const PhysicalParams& p, const QuantumNumbers& qn, SolverMode mode,
                                const OracleConfig& cfg,
                                const std::vector<double>& exact_cutoffs = kDefaultExactCutoffs);

}  // namespace kgb
