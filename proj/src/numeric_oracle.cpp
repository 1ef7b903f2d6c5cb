#include "kgbound/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "kgbound/approximation.hpp"

namespace kgb {
namespace {

constexpr double kRefineRelTol = 1e-10;

struct Crossing {
  double lo;
  double hi;
};

// Splits [a, b] until each piece holds a single unit jump of the count.
template <typename Count>
void isolate(const Count& count, double a, std::size_t ca, double b, std::size_t cb,
             std::vector<Crossing>& out, int depth = 0) {
  if (ca == cb) return;
  const std::size_t jump = ca > cb ? ca - cb : cb - ca;
  const double mid = 0.5 * (a + b);
  if (jump == 1 || depth > 80 || mid <= a || mid >= b) {
    // Degenerate multi-jumps at resolution limit are kept once per unit.
    for (std::size_t k = 0; k < jump; ++k) out.push_back({a, b});
    return;
  }
  const std::size_t cm = count(mid);
  isolate(count, a, ca, mid, cm, out, depth + 1);
  isolate(count, mid, cm, b, cb, out, depth + 1);
}

template <typename Count>
double refine(const Count& count, double a, double b) {
  std::size_t ca = count(a);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    if (b - a <= kRefineRelTol * std::min(std::abs(a), std::abs(b)) || mid <= a || mid >= b) break;
    const std::size_t cm = count(mid);
    if (cm == ca) {
      a = mid;
      ca = cm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

void require_valid_scan(const EnergyScan& scan) {
  if (!(scan.e_min < scan.e_max) || !(scan.e_max <= 0.0) || !std::isfinite(scan.e_min) ||
      scan.n_brackets < 1) {
    std::ostringstream msg;
    msg << "energy scan (" << scan.e_min << ", " << scan.e_max << ", " << scan.n_brackets
        << ") must satisfy e_min < e_max <= 0 with at least one bracket";
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
}

}  // namespace

std::string_view to_string(OracleVariant variant) {
  return variant == OracleVariant::approx ? "approx" : "exact-regularized";
}

OracleConfig default_oracle_config(const EnergyScan& scan) {
  OracleConfig cfg;
  cfg.scan = scan;
  return cfg;
}

void require_valid_grid(const RadialGrid& grid) {
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || !std::isfinite(grid.r_max) ||
      grid.n_points < kMinOraclePoints) {
    std::ostringstream msg;
    msg << "oracle grid (" << grid.r_min << ", " << grid.r_max << ", " << grid.n_points
        << ") must satisfy 0 < r_min < r_max and n_points >= " << kMinOraclePoints;
    throw SolverError(ErrorKind::invalid_argument, msg.str());
  }
}

RadialGrid doubled(const RadialGrid& grid) {
  return {grid.r_min, grid.r_max, 2 * grid.n_points - 1};
}

double radial_bracket(double r, const PhysicalParams& p, int m, double energy, OracleVariant variant,
                      SolverMode mode) {
  const double x = r * r / (p.r0 * p.r0);
  const double u = variant == OracleVariant::approx ? approx_u(x, match_coefficients(p), p, mode)
                                                     : exact_u(x, p, mode);
  // The paper-literal convention carries an extra r0 on the Coulomb-like
  // cross term and an extra r0^2 on the diamagnetic term.
  const bool literal = mode == SolverMode::paper_literal;
  const double cross_length = literal ? p.r0 * p.r0 : p.r0;
  const double field_scale = literal ? p.r0 * p.r0 : 1.0;
  const double mm = static_cast<double>(m);
  return energy * energy - p.m0 * p.m0 + 2.0 * mm * p.B0 - mm * mm / (r * r) -
         field_scale * p.B0 * p.B0 * r * r + 2.0 * energy * p.Z0 * cross_length / (r * r) +
         4.0 / (p.r0 * p.r0) * u;
}

RadialOperator::RadialOperator(const PhysicalParams& p, int m, const RadialGrid& grid,
                               OracleVariant variant, SolverMode mode)
    : grid_(grid) {
  require_valid_grid(grid);
  const std::size_t n = grid.n_points - 2;
  const double h = grid.step();
  const double inv_h2 = 1.0 / (h * h);
  r_.resize(n);
  base_diag_.resize(n);
  linear_.resize(n);
  off_.resize(n - 1);
  const bool literal = mode == SolverMode::paper_literal;
  const double cross_length = literal ? p.r0 * p.r0 : p.r0;
  for (std::size_t i = 0; i < n; ++i) {
    r_[i] = grid.at(i + 1);
    base_diag_[i] = -2.0 * inv_h2 + radial_bracket(r_[i], p, m, 0.0, variant, mode);
    linear_[i] = 2.0 * p.Z0 * cross_length / (r_[i] * r_[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Row i couples forward with 1/h^2 + 1/(2 h r_i); row i+1 couples back
    // with 1/h^2 - 1/(2 h r_{i+1}), which is positive on any interior node.
    const double forward = inv_h2 + 0.5 / (h * r_[i]);
    const double backward = inv_h2 - 0.5 / (h * r_[i + 1]);
    off_[i] = std::sqrt(forward * backward);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(base_diag_[i]) || !std::isfinite(linear_[i])) {
      std::ostringstream msg;
      msg << "radial operator overflows at r = " << r_[i] << " fm";
      throw SolverError(ErrorKind::overflow, msg.str());
    }
  }
}

SymTridiagonal RadialOperator::matrix(double energy) const {
  SymTridiagonal t;
  t.off = off_;
  t.diag.resize(r_.size());
  for (std::size_t i = 0; i < r_.size(); ++i) {
    t.diag[i] = base_diag_[i] + energy * energy + energy * linear_[i];
    if (!std::isfinite(t.diag[i])) {
      throw SolverError(ErrorKind::overflow, "radial operator diagonal overflows");
    }
  }
  return t;
}

std::size_t RadialOperator::negative_count(double energy) const {
  const double e2 = energy * energy;
  double max_off_sq = 0.0;
  for (double e : off_) max_off_sq = std::max(max_off_sq, e * e);
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_off_sq);
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const double d = base_diag_[i] + e2 + energy * linear_[i];
    q = i == 0 ? d : d - off_[i - 1] * off_[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

SymTridiagonal assemble_operator(const PhysicalParams& p, int m, double energy, const OracleConfig& cfg,
                                 SolverMode mode) {
  return RadialOperator(p, m, cfg.grid, cfg.variant, mode).matrix(energy);
}

double singularity_indicator(const PhysicalParams& p, int m, double energy, const OracleConfig& cfg,
                             SolverMode mode) {
  return eigenvalue_nearest(assemble_operator(p, m, energy, cfg, mode), 0.0);
}

int count_nodes(std::span<const double> values, double rel_threshold) {
  double big = 0.0;
  for (double v : values) big = std::max(big, std::abs(v));
  const double floor = rel_threshold * big;
  int nodes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

std::vector<double> near_null_vector(const RadialOperator& op, double energy) {
  const SymTridiagonal t = op.matrix(energy);
  const double lambda = eigenvalue_nearest(t, 0.0);
  return inverse_iteration(t, lambda, 3);
}

int node_count_at(const PhysicalParams& p, int m, double energy, const OracleConfig& cfg, SolverMode mode) {
  const RadialOperator op(p, m, cfg.grid, cfg.variant, mode);
  return count_nodes(near_null_vector(op, energy));
}

double relocate_level(const PhysicalParams& p, int m, const RadialGrid& grid, OracleVariant variant,
                      SolverMode mode, double energy_guess, double max_half_width) {
  const RadialOperator op(p, m, grid, variant, mode);
  auto count = [&op](double e) { return op.negative_count(e); };
  double delta = std::max(1e-9 * std::abs(energy_guess), 1e-12);
  for (;;) {
    const double a = energy_guess - delta;
    const double b = energy_guess + delta;
    const std::size_t ca = count(a);
    const std::size_t cb = count(b);
    if (ca != cb) {
      std::vector<Crossing> crossings;
      isolate(count, a, ca, b, cb, crossings);
      double best = std::numeric_limits<double>::quiet_NaN();
      for (const auto& c : crossings) {
        const double e = refine(count, c.lo, c.hi);
        if (std::isnan(best) || std::abs(e - energy_guess) < std::abs(best - energy_guess)) best = e;
      }
      return best;
    }
    if (delta >= max_half_width) break;
    delta = std::min(4.0 * delta, max_half_width);
  }
  std::ostringstream msg;
  msg << "relocate_level: no level within " << max_half_width << " of E = " << energy_guess;
  throw SolverError(ErrorKind::no_bound_state, msg.str());
}

OracleSpectrum oracle_levels(const PhysicalParams& p, int m, const OracleConfig& cfg, SolverMode mode,
                             int n_max) {
  require_valid_grid(cfg.grid);
  require_valid_scan(cfg.scan);
  const LevelSource source = cfg.variant == OracleVariant::approx ? LevelSource::oracle_approx
                                                                  : LevelSource::oracle_exact_regularized;

  const RadialOperator op(p, m, cfg.grid, cfg.variant, mode);
  auto count = [&op](double e) { return op.negative_count(e); };

  const std::size_t nb = cfg.scan.n_brackets;
  const double width = cfg.scan.e_max - cfg.scan.e_min;
  std::vector<Crossing> crossings;
  double prev_e = cfg.scan.e_min;
  std::size_t prev_c = count(prev_e);
  for (std::size_t j = 1; j <= nb; ++j) {
    const double e = j == nb ? cfg.scan.e_max : cfg.scan.e_min + width * static_cast<double>(j) / static_cast<double>(nb);
    const std::size_t c = count(e);
    isolate(count, prev_e, prev_c, e, c, crossings);
    prev_e = e;
    prev_c = c;
  }
  if (crossings.empty()) {
    std::ostringstream msg;
    msg << "oracle: no level for m = " << m << " in [" << cfg.scan.e_min << ", " << cfg.scan.e_max << "]";
    throw SolverError(ErrorKind::no_bound_state, msg.str());
  }

  std::vector<double> energies;
  energies.reserve(crossings.size());
  for (const auto& c : crossings) energies.push_back(refine(count, c.lo, c.hi));
  std::sort(energies.begin(), energies.end());

  OracleSpectrum result;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    const double energy = energies[k];
    const SymTridiagonal t = op.matrix(energy);
    // At a refined crossing the near-zero eigenvalue dominates the inverse
    // by many orders of magnitude, so shift 0 converges in two sweeps.
    const int nodes = count_nodes(inverse_iteration(t, 0.0, 2));
    if (n_max >= 0 && nodes > n_max) continue;
    const double lambda = eigenvalue_nearest(t, 0.0);

    OracleLevel level;
    level.node_count = nodes;
    level.unextrapolated_energy = energy;
    level.state.qn = {nodes, m};
    level.state.energy = energy;
    level.state.residual = lambda;
    level.state.source = source;

    if (cfg.richardson) {
      // Half the gap to the nearest neighbour keeps the search on this level.
      double gap = std::abs(energy) * 1e-2;
      if (k > 0) gap = std::min(gap, energy - energies[k - 1]);
      if (k + 1 < energies.size()) gap = std::min(gap, energies[k + 1] - energy);
      const double fine = relocate_level(p, m, doubled(cfg.grid), cfg.variant, mode, energy, 0.5 * gap);
      level.grid_error_estimate = std::abs(fine - energy);
      level.state.energy = fine + (fine - energy) / 3.0;
    }
    result.levels.push_back(level);
  }

  std::sort(result.levels.begin(), result.levels.end(), [](const OracleLevel& a, const OracleLevel& b) {
    return a.node_count != b.node_count ? a.node_count < b.node_count : a.state.energy < b.state.energy;
  });
  std::map<int, int> multiplicity;
  for (const auto& level : result.levels) ++multiplicity[level.node_count];
  int expected = 0;
  for (const auto& [nodes, times] : multiplicity) {
    if (nodes != expected) {
      std::ostringstream msg;
      msg << "m = " << m << ": node counts skip from " << expected - 1 << " to " << nodes
          << " (missed level?)";
      result.warnings.push_back(msg.str());
    }
    if (times > 1) {
      std::ostringstream msg;
      msg << "m = " << m << ": " << times << " levels share node count " << nodes;
      result.warnings.push_back(msg.str());
    }
    expected = nodes + 1;
  }
  return result;
}

}  // namespace kgb
