#include "kgbound/cross_check.hpp"

#include <cmath>
#include <sstream>

namespace kgb {

ComparisonRecord compare_report(const PhysicalParams& p, const QuantumNumbers& qn, SolverMode mode,
                                const OracleConfig& cfg, const std::vector<double>& exact_cutoffs) {
  ComparisonRecord rec;
  rec.params = p;
  rec.qn = qn;
  rec.mode = mode;

  std::optional<BoundState> analytic;
  try {
    analytic = solve_level({p, qn, mode, cfg.scan});
    rec.e_analytic = analytic->energy;
  } catch (const SolverError& err) {
    rec.notes.push_back(std::string("analytic level absent: ") + err.what());
  }

  OracleConfig approx_cfg = cfg;
  approx_cfg.variant = OracleVariant::approx;
  try {
    const OracleSpectrum spectrum = oracle_levels(p, qn.m, approx_cfg, mode, qn.n);
    for (const auto& w : spectrum.warnings) rec.notes.push_back("oracle: " + w);
    for (const auto& level : spectrum.levels) {
      if (level.node_count != qn.n) continue;
      rec.e_oracle_approx = level.state.energy;
      rec.grid_error_estimate = level.grid_error_estimate;
      rec.node_count = level.node_count;
      break;
    }
    if (!rec.e_oracle_approx) rec.notes.push_back("oracle level with node count " + std::to_string(qn.n) + " absent");
  } catch (const SolverError& err) {
    rec.notes.push_back(std::string("oracle level absent: ") + err.what());
  }

  if (rec.e_analytic && rec.e_oracle_approx) {
    rec.abs_diff = std::abs(*rec.e_analytic - *rec.e_oracle_approx);
    rec.rel_diff = *rec.abs_diff / std::abs(*rec.e_analytic);
  }

  for (double fraction : exact_cutoffs) {
    ExactRegularizedLevel entry;
    entry.r_min = fraction * p.r0;
    OracleConfig exact_cfg = cfg;
    exact_cfg.variant = OracleVariant::exact_regularized;
    exact_cfg.grid.r_min = entry.r_min;
    exact_cfg.richardson = false;
    try {
      const OracleSpectrum spectrum = oracle_levels(p, qn.m, exact_cfg, mode, qn.n);
      entry.levels_in_window = spectrum.levels.size();
      for (const auto& level : spectrum.levels) {
        if (level.node_count == qn.n) {
          entry.energy = level.state.energy;
          entry.node_count = level.node_count;
          break;
        }
      }
      if (!entry.energy) {
        std::ostringstream note;
        note << "no level with " << qn.n << " nodes among " << spectrum.levels.size();
        if (!spectrum.levels.empty()) {
          note << " (node counts " << spectrum.levels.front().node_count << ".."
               << spectrum.levels.back().node_count << ")";
        }
        entry.note = note.str();
      }
    } catch (const SolverError& err) {
      entry.note = err.what();
    }
    if (entry.energy && rec.e_oracle_approx && !rec.approximation_error_estimate) {
      rec.approximation_error_estimate = std::abs(*entry.energy - *rec.e_oracle_approx);
    }
    rec.oracle_exact.push_back(entry);
  }

  if (analytic) {
    try {
      const RadialGrid grid{0.0, suggested_r_max(p, *analytic->coeffs, qn.n), 4001};
      rec.density_peak_r = peak_radius(charge_density(wavefunction(*analytic, p, grid)));
    } catch (const SolverError& err) {
      rec.notes.push_back(std::string("density peak unavailable: ") + err.what());
    }
  }
  return rec;
}

}  // namespace kgb
