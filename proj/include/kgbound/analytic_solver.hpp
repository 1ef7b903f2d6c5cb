#pragma once

// Bound states of the solvable form
//
//   x u'' + u' + [b1 - b2^2 x - k^2 / x] u = 0,   x = r^2 / r0^2,
//
// obtained after replacing the 1/x^2 term by its three-term approximation.
// Regular, decaying solutions exist when b1 / (2 b2) - k = n + 1/2 and read
// u(x) = x^k exp(-b2 x) M(-n, 2k + 1; 2 b2 x).

#include <optional>
#include <string>
#include <vector>

#include "kgbound/core_model.hpp"
#include "kgbound/numeric_oracle.hpp"

namespace kgb {

/// Reduced coefficients at energy E. Throws SolverError(weak_field) when
/// beta2^2 <= 0 and SolverError(kappa_domain) when kappa^2 <= 0.
CoefficientSet coefficients(const PhysicalParams& p, int m, double energy, SolverMode mode);

/// Squared coefficients without the domain checks, for diagnostics.
struct SquaredCoefficients {
  double beta1_sq = 0.0;
  double beta2_sq = 0.0;
  double kappa_sq = 0.0;
};
SquaredCoefficients squared_coefficients(const PhysicalParams& p, int m, double energy, SolverMode mode);

/// Energy at which kappa^2 vanishes, capped at 0; bound states lie below it.
double kappa_domain_bound(const PhysicalParams& p, int m, SolverMode mode);

/// [-10 m0, bound - 1e-9 |bound|] with 2000 brackets.
EnergyScan default_energy_scan(const PhysicalParams& p, int m, SolverMode mode);

struct QuantizationProblem {
  PhysicalParams params;
  QuantumNumbers qn;
  SolverMode mode = SolverMode::derived;
  EnergyScan scan;
};

/// F(E) = beta1^2 / (2 beta2) - kappa - n - 1/2.
double quantization_residual(const QuantizationProblem& prob, double energy);

/// Grid on which the oracle confirms node counts of analytic roots.
RadialGrid node_confirmation_grid(const PhysicalParams& p, const CoefficientSet& coeffs, int n);

/// Finds the level n for magnetic number m: scans F over the window (clipped
/// to the kappa domain), refines every sign change to |dE| <= 1e-10 |E| and
/// keeps the root whose oracle node count equals n.
///
/// Throws SolverError with kind no_bound_state (no sign change, or no root
/// with the right node count), ambiguous_bracket (several roots match),
/// weak_field or invalid_argument.
BoundState solve_level(const QuantizationProblem& prob);

struct AbsentLevel {
  QuantumNumbers qn;
  ErrorKind kind;
  std::string message;
};

struct SpectrumResult {
  std::vector<BoundState> levels;  ///< sorted by (m, n)
  std::vector<AbsentLevel> absent;
};

/// All levels n <= n_max for each m in m_list. Per-level failures are
/// collected in `absent`; the sweep never aborts. When `scan` is empty each m
/// uses default_energy_scan.
SpectrumResult solve_spectrum(const PhysicalParams& p, SolverMode mode, int n_max,
                              const std::vector<int>& m_list,
                              const std::optional<EnergyScan>& scan = std::nullopt);

/// Radius beyond which |u|^2 has fallen more than 60 e-folds below its peak.
double suggested_r_max(const PhysicalParams& p, const CoefficientSet& coeffs, int n);

struct RadialWavefunction {
  BoundState state;
  PhysicalParams params;
  double norm_constant = 0.0;      ///< u = norm_constant * x^k e^{-b2 x} M(...)
  double log_norm_constant = 0.0;  ///< natural log of norm_constant
  SampledFunction samples;         ///< normalized u(r)
};

/// Unnormalized u(r) evaluated with a log-scale shift so large exponents do
/// not overflow: returns u(r) * exp(-shift).
double unnormalized_u(double r, const PhysicalParams& p, const CoefficientSet& coeffs, int n, double shift);

/// Samples the normalized wavefunction, with integral |u|^2 r dr = 1 over
/// [0, inf). Throws SolverError(grid_too_short) when the grid leaves more
/// than 1e-10 of the norm beyond r_max.
RadialWavefunction wavefunction(const BoundState& state, const PhysicalParams& p, const RadialGrid& grid);

/// rho(r) = (-E / m0) |u(r)|^2 on the wavefunction's grid.
SampledFunction charge_density(const RadialWavefunction& wf);

/// Radius of the largest sample.
double peak_radius(const SampledFunction& f);

/// Max over grid points of |x u'' + u' + [...] u| divided by the max of the
/// individual terms, using analytic derivatives of the closed-form solution
/// and the oracle's approximate radial bracket mapped to the x variable.
double scaled_operator_residual(const BoundState& state, const PhysicalParams& p, const RadialGrid& grid);

}  // namespace kgb
