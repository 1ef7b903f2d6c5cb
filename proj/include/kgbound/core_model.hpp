#pragma once

// Domain types shared by every kgbound module.
//
// Units are natural (hbar = c = e = 1) throughout: energies and masses in
// fm^-1, lengths in fm, magnetic fields in fm^-2. No conversions are offered.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgb {

/// Model constants of the inverse-square well V(r) = -Z0 r0 / r^2 in a
/// uniform perpendicular field B0.
struct PhysicalParams {
  double m0 = 0.0;  ///< rest mass energy, fm^-1
  double Z0 = 0.0;  ///< well strength parameter, fm^-1
  double r0 = 0.0;  ///< nuclear placement distance, fm
  double B0 = 0.0;  ///< magnetic field magnitude, fm^-2
};

struct QuantumNumbers {
  int n = 0;  ///< radial index, n >= 0
  int m = 0;  ///< magnetic index
};

/// Which coefficient convention to use for the solvable form.
///
/// `derived` re-derives the coefficients from the radial equation with
/// consistent powers of r0; `paper_literal` evaluates the printed
/// coefficient formulas verbatim. The two agree when r0 = 1 fm.
enum class SolverMode { derived, paper_literal };

std::string_view to_string(SolverMode mode);
/// Accepts "derived", "paper" and "paper-literal".
std::optional<SolverMode> parse_solver_mode(std::string_view text);

/// Reduced coefficients of x u'' + u' + [b1 - b2^2 x - k^2 / x] u = 0.
struct CoefficientSet {
  double beta1_sq = 0.0;
  double beta2 = 0.0;      ///< positive root
  double kappa_bar = 0.0;  ///< positive root
  SolverMode mode = SolverMode::derived;
};

enum class LevelSource { analytic, oracle_approx, oracle_exact_regularized };

std::string_view to_string(LevelSource source);

struct BoundState {
  QuantumNumbers qn;
  double energy = 0.0;  ///< fm^-1, always negative (particle branch)
  /// Present for analytic states; oracle levels carry no coefficient set.
  std::optional<CoefficientSet> coeffs;
  double residual = 0.0;
  LevelSource source = LevelSource::analytic;
};

/// Energy search window [e_min, e_max] split into n_brackets subintervals.
struct EnergyScan {
  double e_min = 0.0;
  double e_max = 0.0;
  std::size_t n_brackets = 2000;
};

/// Uniform radial grid of n_points nodes spanning [r_min, r_max].
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t n_points = 0;

  double step() const { return (r_max - r_min) / static_cast<double>(n_points - 1); }
  double at(std::size_t i) const;
};

/// Radii paired with function values. Radii strictly increase; all entries
/// are finite.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(std::vector<double> r_values, std::vector<double> values);

  std::span<const double> r() const { return r_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return r_.size(); }
  bool empty() const { return r_.empty(); }

 private:
  std::vector<double> r_;
  std::vector<double> values_;
};

enum class ErrorKind {
  invalid_argument,
  weak_field,
  kappa_domain,
  no_bound_state,
  ambiguous_bracket,
  grid_too_short,
  window_sign_change,
  overflow,
};

std::string_view to_string(ErrorKind kind);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class IssueKind { non_positive_field, approximation_range, weak_field };

struct ValidationIssue {
  IssueKind kind;
  std::string field;
  std::string message;

  /// Approximation-range issues are advisory; the rest make the model unusable.
  bool is_warning() const { return kind == IssueKind::approximation_range; }
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  /// True when only advisory issues were raised.
  bool usable() const;
  bool has(IssueKind kind) const;
};

/// Z0 range (fm^-1) over which the 1/x^2 approximation is claimed to hold.
inline constexpr double kApproxRangeLow = 20.0;
inline constexpr double kApproxRangeHigh = 50.0;

ValidationReport validate_params(const PhysicalParams& p, SolverMode mode);

/// Throws SolverError(invalid_argument) listing hard violations; weak-field
/// violations are reported as ErrorKind::weak_field.
void require_usable(const PhysicalParams& p, SolverMode mode);

}  // namespace kgb
