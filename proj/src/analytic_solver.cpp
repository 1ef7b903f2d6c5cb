#include "kgbound/analytic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kgbound/approximation.hpp"
#include "kgbound/quadrature.hpp"
#include "kgbound/roots.hpp"
#include "kgbound/specfun.hpp"

namespace kgb {
namespace {

constexpr double kRootRelTol = 1e-12;
constexpr double kTailTolerance = 1e-10;
constexpr double kNormRelTol = 1e-10;
constexpr double kEnvelopeEFolds = 60.0;

std::string describe(const QuantumNumbers& qn) {
  std::ostringstream out;
  out << "(n = " << qn.n << ", m = " << qn.m << ")";
  return out.str();
}

void require_valid_problem(const QuantizationProblem& prob) {
  require_usable(prob.params, prob.mode);
  if (prob.qn.n < 0) throw SolverError(ErrorKind::invalid_argument, "radial quantum number n must be >= 0");
  const EnergyScan& s = prob.scan;
  if (!(s.e_min < s.e_max) || !(s.e_max <= 0.0) || !std::isfinite(s.e_min) || s.n_brackets < 10) {
    std::ostringstream msg;
    msg << "scan window (" << s.e_min << ", " << s.e_max << ", " << s.n_brackets
        << ") must satisfy e_min < e_max <= 0 and n_brackets >= 10";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
}

// Offset that keeps x^k e^{-b2 x} of order one near its peak.
double log_shift(const CoefficientSet& c) {
  const double x_peak = c.kappa_bar / c.beta2;
  return c.kappa_bar * std::log(x_peak) - c.beta2 * x_peak;
}

double x_of(double r, const PhysicalParams& p) { return r * r / (p.r0 * p.r0); }

}  // namespace

SquaredCoefficients squared_coefficients(const PhysicalParams& p, int m, double energy, SolverMode mode) {
  const ApproxCoefficients a = match_coefficients(p);
  const double r0 = p.r0;
  const double r0_sq = r0 * r0;
  const double mm = static_cast<double>(m);
  const double base = energy * energy - p.m0 * p.m0 + 2.0 * mm * p.B0;
  const double field = p.B0 * p.B0 * r0_sq * r0_sq;
  SquaredCoefficients c;
  if (mode == SolverMode::paper_literal) {
    c.beta1_sq = 0.25 * r0_sq * (base + a.A1);
    c.beta2_sq = 0.25 * r0_sq * (field - a.A2);
    c.kappa_sq = 0.25 * r0_sq * (mm * mm / r0_sq - 2.0 * p.Z0 * energy - a.A3);
  } else {
    // Same layout as the literal set so that both agree bit-for-bit at r0 = 1.
    c.beta1_sq = 0.25 * r0_sq * (base + a.A1 / r0_sq);
    c.beta2_sq = 0.25 * (field - a.A2);
    c.kappa_sq = 0.25 * r0_sq * (mm * mm / r0_sq - 2.0 * p.Z0 * energy / r0 - a.A3 / r0_sq);
  }
  return c;
}

CoefficientSet coefficients(const PhysicalParams& p, int m, double energy, SolverMode mode) {
  const SquaredCoefficients sq = squared_coefficients(p, m, energy, mode);
  if (!(sq.beta2_sq > 0.0)) {
    std::ostringstream msg;
    msg << "weak field: beta2_bar^2 = " << sq.beta2_sq << " <= 0 (B0 r0^2 must exceed Z0)";
    throw SolverError(ErrorKind::weak_field, msg.str());
  }
  if (!(sq.kappa_sq > 0.0)) {
    std::ostringstream msg;
    msg << "kappa_bar^2 = " << sq.kappa_sq << " <= 0 at E = " << energy << " for m = " << m;
    throw SolverError(ErrorKind::kappa_domain, msg.str());
  }
  return {sq.beta1_sq, std::sqrt(sq.beta2_sq), std::sqrt(sq.kappa_sq), mode};
}

double kappa_domain_bound(const PhysicalParams& p, int m, SolverMode mode) {
  const double a3 = match_coefficients(p).A3;
  const double mm = static_cast<double>(m);
  const double bound = mode == SolverMode::paper_literal
                           ? (mm * mm / (p.r0 * p.r0) - a3) / (2.0 * p.Z0)
                           : (mm * mm - a3) / (2.0 * p.Z0 * p.r0);
  return std::min(bound, 0.0);
}

EnergyScan default_energy_scan(const PhysicalParams& p, int m, SolverMode mode) {
  const double bound = kappa_domain_bound(p, m, mode);
  const double upper = bound == 0.0 ? -1e-9 * p.m0 : bound - 1e-9 * std::abs(bound);
  return {-10.0 * p.m0, upper, 2000};
}

double quantization_residual(const QuantizationProblem& prob, double energy) {
  const CoefficientSet c = coefficients(prob.params, prob.qn.m, energy, prob.mode);
  return c.beta1_sq / (2.0 * c.beta2) - c.kappa_bar - static_cast<double>(prob.qn.n) - 0.5;
}

double suggested_r_max(const PhysicalParams& p, const CoefficientSet& coeffs, int n) {
  // Envelope of |u|^2 for large x: x^{2(k + n)} e^{-2 b2 x}.
  const double power = coeffs.kappa_bar + static_cast<double>(n);
  const double x_peak = power / coeffs.beta2;
  auto envelope = [&](double x) { return 2.0 * (power * std::log(x) - coeffs.beta2 * x); };
  const double target = envelope(x_peak) - kEnvelopeEFolds;
  double hi = 2.0 * x_peak + 1.0 / coeffs.beta2;
  while (envelope(hi) > target) hi *= 2.0;
  const double x_tail =
      brent_root([&](double x) { return envelope(x) - target; }, x_peak, hi, 1e-12).root;
  return p.r0 * std::sqrt(x_tail);
}

RadialGrid node_confirmation_grid(const PhysicalParams& p, const CoefficientSet& coeffs, int n) {
  const double r_max = suggested_r_max(p, coeffs, n);
  const double r_min = std::min(1e-3, 1e-3 * r_max);
  const auto n_points = static_cast<std::size_t>(std::max(4000.0, std::ceil(800.0 * r_max)));
  return {r_min, r_max, std::min<std::size_t>(n_points, 400000)};
}

BoundState solve_level(const QuantizationProblem& prob) {
  require_valid_problem(prob);
  const double bound = kappa_domain_bound(prob.params, prob.qn.m, prob.mode);
  const double e_lo = prob.scan.e_min;
  const double e_hi = std::min(prob.scan.e_max, bound - 1e-9 * std::abs(bound));
  if (!(e_lo < e_hi)) {
    std::ostringstream msg;
    msg << "no bound state " << describe(prob.qn) << ": scan window lies outside the kappa domain E < "
        << bound;
    throw SolverError(ErrorKind::no_bound_state, msg.str());
  }

  auto f = [&prob](double e) { return quantization_residual(prob, e); };
  const std::size_t nb = prob.scan.n_brackets;
  std::vector<double> roots;
  double prev_e = e_lo;
  double prev_f = f(prev_e);
  for (std::size_t j = 1; j <= nb; ++j) {
    const double e = j == nb ? e_hi : e_lo + (e_hi - e_lo) * static_cast<double>(j) / static_cast<double>(nb);
    const double fe = f(e);
    if (fe == 0.0) {
      roots.push_back(e);
    } else if (prev_f != 0.0 && (prev_f > 0.0) != (fe > 0.0)) {
      roots.push_back(brent_root(f, prev_e, e, kRootRelTol).root);
    }
    prev_e = e;
    prev_f = fe;
  }
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no bound state " << describe(prob.qn) << ": F(E) has no sign change in [" << e_lo << ", "
        << e_hi << "]";
    throw SolverError(ErrorKind::no_bound_state, msg.str());
  }

  std::vector<BoundState> matches;
  std::ostringstream seen;
  for (double e : roots) {
    const CoefficientSet c = coefficients(prob.params, prob.qn.m, e, prob.mode);
    OracleConfig cfg;
    cfg.variant = OracleVariant::approx;
    cfg.grid = node_confirmation_grid(prob.params, c, prob.qn.n);
    const int nodes = node_count_at(prob.params, prob.qn.m, e, cfg, prob.mode);
    seen << " E=" << e << " (nodes " << nodes << ")";
    if (nodes == prob.qn.n) {
      matches.push_back({prob.qn, e, c, f(e), LevelSource::analytic});
    }
  }
  if (matches.empty()) {
    throw SolverError(ErrorKind::no_bound_state,
                      "no root with node count " + std::to_string(prob.qn.n) + " for " + describe(prob.qn) +
                          ":" + seen.str());
  }
  if (matches.size() > 1) {
    throw SolverError(ErrorKind::ambiguous_bracket,
                      "several roots match " + describe(prob.qn) + ":" + seen.str());
  }
  return matches.front();
}

SpectrumResult solve_spectrum(const PhysicalParams& p, SolverMode mode, int n_max,
                              const std::vector<int>& m_list, const std::optional<EnergyScan>& scan) {
  SpectrumResult result;
  for (int m : m_list) {
    for (int n = 0; n <= n_max; ++n) {
      QuantizationProblem prob{p, {n, m}, mode, scan.value_or(EnergyScan{})};
      try {
        if (!scan) prob.scan = default_energy_scan(p, m, mode);
        result.levels.push_back(solve_level(prob));
      } catch (const SolverError& err) {
        result.absent.push_back({{n, m}, err.kind(), err.what()});
      }
    }
  }
  auto by_m_n = [](const QuantumNumbers& a, const QuantumNumbers& b) {
    return a.m != b.m ? a.m < b.m : a.n < b.n;
  };
  std::stable_sort(result.levels.begin(), result.levels.end(),
                   [&](const BoundState& a, const BoundState& b) { return by_m_n(a.qn, b.qn); });
  std::stable_sort(result.absent.begin(), result.absent.end(),
                   [&](const AbsentLevel& a, const AbsentLevel& b) { return by_m_n(a.qn, b.qn); });
  return result;
}

double unnormalized_u(double r, const PhysicalParams& p, const CoefficientSet& coeffs, int n, double shift) {
  const double x = x_of(r, p);
  if (x == 0.0) return 0.0;
  const double log_prefactor = coeffs.kappa_bar * std::log(x) - coeffs.beta2 * x - shift;
  const double poly = kummer_m_polynomial(static_cast<unsigned>(n), 2.0 * coeffs.kappa_bar + 1.0,
                                          2.0 * coeffs.beta2 * x);
  return std::exp(log_prefactor) * poly;
}

RadialWavefunction wavefunction(const BoundState& state, const PhysicalParams& p, const RadialGrid& grid) {
  if (!state.coeffs) {
    throw SolverError(ErrorKind::invalid_argument, "wavefunction: state carries no coefficient set");
  }
  if (!(grid.r_min >= 0.0) || !(grid.r_max > grid.r_min) || grid.n_points < 2 || !std::isfinite(grid.r_max)) {
    std::ostringstream msg;
    msg << "wavefunction: grid (" << grid.r_min << ", " << grid.r_max << ", " << grid.n_points
        << ") must satisfy 0 <= r_min < r_max and n_points >= 2";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
  if (std::abs(state.residual) > 1e-8) {
    std::ostringstream msg;
    msg << "wavefunction: quantization residual " << state.residual << " exceeds tolerance";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
  const CoefficientSet& c = *state.coeffs;
  const int n = state.qn.n;
  const double shift = log_shift(c);

  // |u|^2 r dr = (r0^2 / 2) |u|^2 dx.
  auto density_x = [&](double x) {
    const double u = unnormalized_u(p.r0 * std::sqrt(x), p, c, n, shift);
    return 0.5 * p.r0 * p.r0 * u * u;
  };
  const double x_cut_envelope = x_of(suggested_r_max(p, c, n), p);
  const double x_grid = x_of(grid.r_max, p);
  const double x_cut = std::max(x_cut_envelope, x_grid);
  const QuadratureResult total = simpson_doubling(density_x, 0.0, x_cut, kNormRelTol, 1024);
  if (!total.converged || !(total.value > 0.0)) {
    throw SolverError(ErrorKind::overflow, "wavefunction: normalization integral did not converge");
  }
  if (x_grid < x_cut) {
    const double tail = simpson_doubling(density_x, x_grid, x_cut, kNormRelTol, 1024).value / total.value;
    if (tail > kTailTolerance) {
      std::ostringstream msg;
      msg << "wavefunction: r_max = " << grid.r_max << " fm leaves norm fraction " << tail
          << " outside the grid (limit " << kTailTolerance << ")";
      throw SolverError(ErrorKind::grid_too_short, msg.str());
    }
  }

  const double inv_sqrt_norm = 1.0 / std::sqrt(total.value);
  std::vector<double> r(grid.n_points), u(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    r[i] = grid.at(i);
    u[i] = unnormalized_u(r[i], p, c, n, shift) * inv_sqrt_norm;
  }

  RadialWavefunction wf;
  wf.state = state;
  wf.params = p;
  wf.log_norm_constant = -shift - 0.5 * std::log(total.value);
  wf.norm_constant = std::exp(wf.log_norm_constant);
  wf.samples = SampledFunction(std::move(r), std::move(u));
  return wf;
}

SampledFunction charge_density(const RadialWavefunction& wf) {
  const double ratio = -wf.state.energy / wf.params.m0;
  const auto u = wf.samples.values();
  std::vector<double> rho(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) rho[i] = ratio * u[i] * u[i];
  const auto r = wf.samples.r();
  return SampledFunction(std::vector<double>(r.begin(), r.end()), std::move(rho));
}

double peak_radius(const SampledFunction& f) {
  if (f.empty()) throw SolverError(ErrorKind::invalid_argument, "peak_radius: empty function");
  const auto v = f.values();
  const auto it = std::max_element(v.begin(), v.end());
  return f.r()[static_cast<std::size_t>(it - v.begin())];
}

double scaled_operator_residual(const BoundState& state, const PhysicalParams& p, const RadialGrid& grid) {
  if (!state.coeffs) {
    throw SolverError(ErrorKind::invalid_argument, "scaled_operator_residual: state carries no coefficients");
  }
  const CoefficientSet& c = *state.coeffs;
  const auto n = static_cast<unsigned>(state.qn.n);
  const double b = 2.0 * c.kappa_bar + 1.0;
  const double shift = log_shift(c);
  const double r0_sq = p.r0 * p.r0;

  double max_residual = 0.0;
  double max_term = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double r = grid.at(i);
    if (!(r > 0.0)) continue;
    const double x = x_of(r, p);
    const double z = 2.0 * c.beta2 * x;
    const double envelope = std::exp(c.kappa_bar * std::log(x) - c.beta2 * x - shift);
    const double g1 = c.kappa_bar / x - c.beta2;
    const double g2 = -c.kappa_bar / (x * x);
    const double m0 = kummer_m_polynomial(n, b, z);
    const double m1 = kummer_m_polynomial_derivative(n, b, z, 1);
    const double m2 = kummer_m_polynomial_derivative(n, b, z, 2);

    const double u = envelope * m0;
    const double du = envelope * (g1 * m0 + 2.0 * c.beta2 * m1);
    const double d2u =
        envelope * ((g2 + g1 * g1) * m0 + 4.0 * c.beta2 * g1 * m1 + 4.0 * c.beta2 * c.beta2 * m2);
    const double bracket =
        0.25 * r0_sq * radial_bracket(r, p, state.qn.m, state.energy, OracleVariant::approx, c.mode);

    const double t1 = x * d2u;
    const double t2 = du;
    const double t3 = bracket * u;
    max_residual = std::max(max_residual, std::abs(t1 + t2 + t3));
    max_term = std::max({max_term, std::abs(t1), std::abs(t2), std::abs(t3)});
  }
  if (max_term == 0.0) return 0.0;
  return max_residual / max_term;
}

}  // namespace kgb
