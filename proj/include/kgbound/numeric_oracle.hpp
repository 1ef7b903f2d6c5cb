#pragma once

// Finite-difference eigen-solver for the radial equation
//
//   u'' + u'/r + Q(r; E) u = 0,
//   Q = (E - V)^2 - m0^2 - m^2/r^2 + 2 m B0 - B0^2 r^2,   V = -Z0 r0 / r^2,
//
// used as an independent check on the analytic quantization condition.
// Energies are the roots of lambda(E), the eigenvalue of the discretized
// operator closest to zero; levels are located where the Sturm count of
// negative eigenvalues jumps as E is scanned.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kgbound/core_model.hpp"
#include "kgbound/tridiagonal.hpp"

namespace kgb {

enum class OracleVariant {
  approx,             ///< V^2 replaced by the matched three-term form
  exact_regularized,  ///< full 1/r^4 term; the inner Dirichlet wall regularizes it
};

std::string_view to_string(OracleVariant variant);

struct OracleConfig {
  OracleVariant variant = OracleVariant::approx;
  RadialGrid grid{1e-3, 5.0, 4000};
  bool richardson = true;
  EnergyScan scan;
};

inline constexpr std::size_t kMinOraclePoints = 200;

/// Default grid (r_min = 1e-3 fm, r_max = 5 fm, 4000 points, Richardson on)
/// with the given energy window.
OracleConfig default_oracle_config(const EnergyScan& scan);

/// Q(r; E) for the chosen variant and coefficient convention.
double radial_bracket(double r, const PhysicalParams& p, int m, double energy, OracleVariant variant,
                      SolverMode mode);

/// Discretized radial operator on the interior nodes of a grid with
/// Dirichlet walls at r_min and r_max. Central differences of u'' + u'/r are
/// symmetrized by a positive diagonal similarity, so eigenvalues are those of
/// the plain central-difference matrix and eigenvector signs are unchanged.
class RadialOperator {
 public:
  RadialOperator(const PhysicalParams& p, int m, const RadialGrid& grid, OracleVariant variant,
                 SolverMode mode);

  std::size_t dimension() const { return r_.size(); }
  std::span<const double> radii() const { return r_; }
  const RadialGrid& grid() const { return grid_; }

  SymTridiagonal matrix(double energy) const;
  /// Number of negative eigenvalues at this energy.
  std::size_t negative_count(double energy) const;

 private:
  RadialGrid grid_;
  std::vector<double> r_;
  std::vector<double> off_;
  std::vector<double> base_diag_;  // E-independent part of the diagonal
  std::vector<double> linear_;     // coefficient of E on the diagonal
};

/// Validates the grid part of a config; throws SolverError(invalid_argument).
void require_valid_grid(const RadialGrid& grid);

/// Builds the operator matrix at one energy. Throws SolverError(overflow)
/// when any entry is not finite.
SymTridiagonal assemble_operator(const PhysicalParams& p, int m, double energy, const OracleConfig& cfg,
                                 SolverMode mode);

/// lambda(E): eigenvalue of smallest magnitude of the assembled operator.
double singularity_indicator(const PhysicalParams& p, int m, double energy, const OracleConfig& cfg,
                             SolverMode mode);

/// Strict sign changes among entries whose magnitude exceeds
/// `rel_threshold` times the largest entry.
int count_nodes(std::span<const double> values, double rel_threshold = 1e-9);

/// Eigenvector belonging to lambda(E) on the given operator.
std::vector<double> near_null_vector(const RadialOperator& op, double energy);

/// Node count of the discrete eigenfunction at energy E (the eigenvector of
/// the eigenvalue closest to zero).
int node_count_at(const PhysicalParams& p, int m, double energy, const OracleConfig& cfg, SolverMode mode);

struct OracleLevel {
  BoundState state;
  int node_count = 0;
  double grid_error_estimate = 0.0;  ///< |E(h/2) - E(h)| when Richardson is on, else 0
  double unextrapolated_energy = 0.0;
};

struct OracleSpectrum {
  std::vector<OracleLevel> levels;  ///< sorted by node count, then energy
  std::vector<std::string> warnings;
};

/// Locates every eigen-energy in cfg.scan, refines each to relative 1e-10,
/// counts eigenvector nodes and keeps levels with node_count <= n_max
/// (all levels when n_max < 0). Throws SolverError(no_bound_state) when the
/// window contains no level at all.
OracleSpectrum oracle_levels(const PhysicalParams& p, int m, const OracleConfig& cfg, SolverMode mode,
                             int n_max);

/// Relocates a single level on `grid` starting from a nearby energy guess;
/// the search widens up to `max_half_width`. Used for grid refinement.
double relocate_level(const PhysicalParams& p, int m, const RadialGrid& grid, OracleVariant variant,
                      SolverMode mode, double energy_guess, double max_half_width);

/// Grid with the same extent and half the spacing.
RadialGrid doubled(const RadialGrid& grid);

}  // namespace kgb
