#include "kgbound/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kgb {

std::string_view to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::derived:
      return "derived";
    case SolverMode::paper_literal:
      return "paper-literal";
  }
  return "unknown";
}

std::optional<SolverMode> parse_solver_mode(std::string_view text) {
  if (text == "derived") return SolverMode::derived;
  if (text == "paper" || text == "paper-literal") return SolverMode::paper_literal;
  return std::nullopt;
}

std::string_view to_string(LevelSource source) {
  switch (source) {
    case LevelSource::analytic:
      return "analytic";
    case LevelSource::oracle_approx:
      return "oracle-approx";
    case LevelSource::oracle_exact_regularized:
      return "oracle-exact-regularized";
  }
  return "unknown";
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
      return "InvalidArgument";
    case ErrorKind::weak_field:
      return "WeakField";
    case ErrorKind::kappa_domain:
      return "KappaDomain";
    case ErrorKind::no_bound_state:
      return "NoBoundState";
    case ErrorKind::ambiguous_bracket:
      return "AmbiguousBracket";
    case ErrorKind::grid_too_short:
      return "GridTooShort";
    case ErrorKind::window_sign_change:
      return "WindowSignChange";
    case ErrorKind::overflow:
      return "Overflow";
  }
  return "Unknown";
}

double RadialGrid::at(std::size_t i) const {
  if (i + 1 == n_points) return r_max;
  return r_min + step() * static_cast<double>(i);
}

SampledFunction::SampledFunction(std::vector<double> r_values, std::vector<double> values)
    : r_(std::move(r_values)), values_(std::move(values)) {
  if (r_.size() != values_.size()) {
    throw SolverError(ErrorKind::invalid_argument, "SampledFunction: radii and values differ in length");
  }
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!std::isfinite(r_[i]) || !std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "SampledFunction: non-finite entry at index " << i;
      throw SolverError(ErrorKind::invalid_argument, msg.str());
    }
    if (i > 0 && !(r_[i] > r_[i - 1])) {
      std::ostringstream msg;
      msg << "SampledFunction: radii not strictly increasing at index " << i;
      throw SolverError(ErrorKind::invalid_argument, msg.str());
    }
  }
}

bool ValidationReport::usable() const {
  return std::all_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& issue) { return issue.is_warning(); });
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& issue) { return issue.kind == kind; });
}

ValidationReport validate_params(const PhysicalParams& p, SolverMode mode) {
  ValidationReport report;
  auto positive = [&](double value, const char* name, bool allow_zero) {
    const bool good = std::isfinite(value) && (allow_zero ? value >= 0.0 : value > 0.0);
    if (!good) {
      std::ostringstream msg;
      msg << name << " must be " << (allow_zero ? "non-negative" : "positive") << ", got " << value;
      report.issues.push_back({IssueKind::non_positive_field, name, msg.str()});
    }
    return good;
  };
  positive(p.m0, "m0", false);
  const bool z0_ok = positive(p.Z0, "Z0", false);
  const bool r0_ok = positive(p.r0, "r0", false);
  const bool b0_ok = positive(p.B0, "B0", true);

  if (z0_ok && (p.Z0 < kApproxRangeLow || p.Z0 > kApproxRangeHigh)) {
    std::ostringstream msg;
    msg << "Z0 = " << p.Z0 << " fm^-1 lies outside the approximation range [" << kApproxRangeLow
        << ", " << kApproxRangeHigh << "]";
    report.issues.push_back({IssueKind::approximation_range, "Z0", msg.str()});
  }

  if (z0_ok && r0_ok && b0_ok) {
    // Both conventions share the sign of (B0^2 r0^4 - Z0^2); they differ only
    // by a positive prefactor.
    const double r0_sq = p.r0 * p.r0;
    const double beta2_sq = mode == SolverMode::derived
                                ? 0.25 * (p.B0 * p.B0 * r0_sq * r0_sq - p.Z0 * p.Z0)
                                : 0.25 * r0_sq * (p.B0 * p.B0 * r0_sq * r0_sq - p.Z0 * p.Z0);
    if (!(beta2_sq > 0.0)) {
      std::ostringstream msg;
      msg << "weak field: B0 r0^2 = " << p.B0 * r0_sq << " must exceed Z0 = " << p.Z0
          << " (beta2_bar^2 = " << beta2_sq << ")";
      report.issues.push_back({IssueKind::weak_field, "B0", msg.str()});
    }
  }
  return report;
}

void require_usable(const PhysicalParams& p, SolverMode mode) {
  const ValidationReport report = validate_params(p, mode);
  for (const auto& issue : report.issues) {
    if (issue.kind == IssueKind::non_positive_field) {
      throw SolverError(ErrorKind::invalid_argument, issue.message);
    }
  }
  for (const auto& issue : report.issues) {
    if (issue.kind == IssueKind::weak_field) throw SolverError(ErrorKind::weak_field, issue.message);
  }
}

}  // namespace kgb
