#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "kgbound/cli_io.hpp"

namespace kgb {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMissing = 2;
constexpr int kExitValidation = 3;
constexpr std::size_t kDefaultDensityPoints = 2001;

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

// Summary lines share standard output with the data only when the data went
// to a file.
std::ostream& summary_stream(const std::string& path, std::ostream& out, std::ostream& err) {
  return path.empty() ? err : out;
}

void warn_validation(const PhysicalParams& p, SolverMode mode, std::ostream& err) {
  for (const auto& issue : validate_params(p, mode).issues) {
    if (issue.is_warning()) err << "warning: " << issue.message << '\n';
  }
}

std::string describe(const PhysicalParams& p) {
  std::ostringstream s;
  s << "Z0=" << format_number(p.Z0) << " B0=" << format_number(p.B0);
  return s.str();
}

}  // namespace

int cmd_spectrum(const SpectrumOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opts.n_max < 0) {
    err << "error: --n-max must be non-negative\n";
    return kExitUsage;
  }
  const SolverMode mode = opts.mode.value_or(cfg.mode);
  const std::vector<double> b0s = opts.b0_list.empty() ? std::vector<double>{cfg.params.B0} : opts.b0_list;
  const std::vector<double> z0s = opts.z0_list.empty() ? std::vector<double>{cfg.params.Z0} : opts.z0_list;

  std::vector<CsvRow> rows;
  for (double b0 : b0s) {
    for (double z0 : z0s) {
      PhysicalParams p = cfg.params;
      p.B0 = b0;
      p.Z0 = z0;
      const ValidationReport report = validate_params(p, mode);
      if (!report.usable()) {
        for (const auto& issue : report.issues) {
          if (!issue.is_warning()) err << "absent: " << describe(p) << ": " << issue.message << '\n';
        }
        continue;
      }
      warn_validation(p, mode, err);
      for (int m : opts.m_list) {
        SpectrumResult result;
        try {
          result = solve_spectrum(p, mode, opts.n_max, {m}, scan_for(cfg, p, m, mode));
        } catch (const SolverError& e) {
          err << "absent: " << describe(p) << " m=" << m << ": " << e.what() << '\n';
          continue;
        }
        for (const auto& level : result.levels) rows.push_back(spectrum_row(p, mode, level));
        for (const auto& gap : result.absent) {
          err << "absent: " << describe(p) << " n=" << gap.qn.n << " m=" << gap.qn.m << " ("
              << to_string(gap.kind) << "): " << gap.message << '\n';
        }
      }
    }
  }
  try {
    emit(opts.out, render_csv(kSpectrumHeader, rows), out);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return rows.empty() ? kExitMissing : kExitOk;
}

int cmd_density(const DensityOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SolverMode mode = opts.mode.value_or(cfg.mode);
  const PhysicalParams& p = cfg.params;
  warn_validation(p, mode, err);
  if (opts.n < 0) {
    err << "error: --n must be non-negative\n";
    return kExitUsage;
  }

  BoundState state;
  try {
    state = solve_level({p, {opts.n, opts.m}, mode, scan_for(cfg, p, opts.m, mode)});
  } catch (const SolverError& e) {
    err << "absent: n=" << opts.n << " m=" << opts.m << " (" << to_string(e.kind()) << "): " << e.what()
        << '\n';
    return e.kind() == ErrorKind::invalid_argument ? kExitUsage : kExitMissing;
  }

  RadialGrid grid{0.0, 0.0, opts.points.value_or(cfg.n_points.value_or(kDefaultDensityPoints))};
  grid.r_max = opts.r_max ? *opts.r_max : cfg.r_max.value_or(suggested_r_max(p, *state.coeffs, opts.n));
  try {
    const RadialWavefunction wf = wavefunction(state, p, grid);
    const SampledFunction rho = charge_density(wf);
    emit(opts.out, render_density_csv(wf, rho), out);
    summary_stream(opts.out, out, err) << "peak_r=" << format_number(peak_radius(rho)) << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_approx_check(const ApproxCheckOptions& opts, std::ostream& out, std::ostream& err) {
  const PhysicalParams p{0.0, opts.z0, opts.r0, 0.0};
  if (!(opts.z0 > 0.0) || !(opts.r0 > 0.0) || !std::isfinite(opts.z0) || !std::isfinite(opts.r0)) {
    err << "error: --z0 and --r0 must be positive\n";
    return kExitUsage;
  }
  try {
    const ApproxErrorReport report = error_report(p, opts.mode, opts.window, opts.points);
    emit(opts.out, render_approx_csv(report), out);
    summary_stream(opts.out, out, err) << "sup_rel_err=" << format_number(report.sup_rel_error)
                                       << " l2_rel_err=" << format_number(report.l2_rel_error) << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_cross_check(const CrossCheckOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SolverMode mode = opts.mode.value_or(cfg.mode);
  const PhysicalParams& p = cfg.params;
  warn_validation(p, mode, err);

  OracleConfig oracle;
  try {
    oracle = default_oracle_config(scan_for(cfg, p, opts.m, mode));
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (cfg.r_min) oracle.grid.r_min = *cfg.r_min;
  if (cfg.r_max) oracle.grid.r_max = *cfg.r_max;
  if (cfg.n_points) oracle.grid.n_points = *cfg.n_points;
  oracle.richardson = opts.richardson;

  const ComparisonRecord rec = compare_report(p, {opts.n, opts.m}, mode, oracle);
  for (const auto& note : rec.notes) err << "note: " << note << '\n';
  try {
    emit(opts.out, render_cross_check_json(rec), out);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!rec.rel_diff) return kExitMissing;
  return *rec.rel_diff <= kCrossCheckTolerance ? kExitOk : kExitValidation;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of a Klein-Gordon particle in an inverse-square well and magnetic field"};
  app.name("kgbound");
  app.require_subcommand(1);

  auto mode_option = [](CLI::App* cmd, std::string& text) {
    cmd->add_option("--mode", text, "Coefficient convention")->check(CLI::IsMember({"derived", "paper", "paper-literal"}));
  };
  auto resolve_mode = [](const std::string& text) -> std::optional<SolverMode> {
    return text.empty() ? std::nullopt : parse_solver_mode(text);
  };

  SpectrumOptions spectrum;
  std::string spectrum_mode;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Solve levels n <= n_max for each m");
  spectrum_cmd->add_option("--config", spectrum.config_path, "JSON config")->required();
  mode_option(spectrum_cmd, spectrum_mode);
  spectrum_cmd->add_option("--n-max", spectrum.n_max, "Highest radial index")->capture_default_str();
  spectrum_cmd->add_option("--m-list", spectrum.m_list, "Magnetic numbers")->delimiter(',')->capture_default_str();
  spectrum_cmd->add_option("--z0-list", spectrum.z0_list, "Sweep over Z0 (fm^-1)")->delimiter(',');
  spectrum_cmd->add_option("--b0-list", spectrum.b0_list, "Sweep over B0 (fm^-2)")->delimiter(',');
  spectrum_cmd->add_option("--out", spectrum.out, "Output CSV path");

  DensityOptions density;
  std::string density_mode;
  double density_r_max = 0.0;
  std::size_t density_points = 0;
  CLI::App* density_cmd = app.add_subcommand("density", "Normalized wavefunction and charge density");
  density_cmd->add_option("--config", density.config_path, "JSON config")->required();
  mode_option(density_cmd, density_mode);
  density_cmd->add_option("--n", density.n, "Radial index")->required();
  density_cmd->add_option("--m", density.m, "Magnetic number")->required();
  CLI::Option* r_max_opt =
      density_cmd->add_option("--r-max", density_r_max, "Outer radius (fm)")->check(CLI::PositiveNumber);
  CLI::Option* points_opt =
      density_cmd->add_option("--points", density_points, "Sample count")->check(CLI::Range(2, 10000000));
  density_cmd->add_option("--out", density.out, "Output CSV path");

  ApproxCheckOptions approx;
  std::string approx_mode;
  std::vector<double> window;
  CLI::App* approx_cmd = app.add_subcommand("approx-check", "Compare the inverse-square term with its approximation");
  approx_cmd->add_option("--z0", approx.z0, "Well strength (fm^-1)")->required();
  approx_cmd->add_option("--r0", approx.r0, "Matching radius (fm)")->required();
  approx_cmd->add_option("--window", window, "Radial window lo,hi (fm)")->delimiter(',')->expected(2)->required();
  approx_cmd->add_option("--points", approx.points, "Sample count")->capture_default_str();
  mode_option(approx_cmd, approx_mode);
  approx_cmd->add_option("--out", approx.out, "Output CSV path");

  CrossCheckOptions cross;
  std::string cross_mode;
  bool no_richardson = false;
  CLI::App* cross_cmd = app.add_subcommand("cross-check", "Compare analytic and finite-difference levels");
  cross_cmd->add_option("--config", cross.config_path, "JSON config")->required();
  mode_option(cross_cmd, cross_mode);
  cross_cmd->add_option("--n", cross.n, "Radial index")->required();
  cross_cmd->add_option("--m", cross.m, "Magnetic number")->required();
  cross_cmd->add_flag("--no-richardson", no_richardson, "Skip the doubled-grid extrapolation");
  cross_cmd->add_option("--out", cross.out, "Output JSON path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectrum_cmd) {
      spectrum.mode = resolve_mode(spectrum_mode);
      return cmd_spectrum(spectrum, out, err);
    }
    if (*density_cmd) {
      density.mode = resolve_mode(density_mode);
      if (*r_max_opt) density.r_max = density_r_max;
      if (*points_opt) density.points = density_points;
      return cmd_density(density, out, err);
    }
    if (*approx_cmd) {
      approx.window = {window[0], window[1]};
      approx.mode = resolve_mode(approx_mode).value_or(SolverMode::derived);
      return cmd_approx_check(approx, out, err);
    }
    cross.mode = resolve_mode(cross_mode);
    cross.richardson = !no_richardson;
    return cmd_cross_check(cross, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace kgb
