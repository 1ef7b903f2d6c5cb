#pragma once

// Configuration ingestion, fixed-format CSV/JSON emission and the
// `kgbound` command line.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kgbound/analytic_solver.hpp"
#include "kgbound/approximation.hpp"
#include "kgbound/cross_check.hpp"

namespace kgb {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  PhysicalParams params;
  SolverMode mode = SolverMode::derived;
  std::optional<double> scan_min;
  std::optional<double> scan_max;
  std::optional<std::size_t> n_brackets;
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<std::size_t> n_points;
  std::string output_path;  ///< empty means standard output
};

/// Parses a flat JSON object. Required: m0, Z0, r0, B0. Optional: mode,
/// scan_min, scan_max, n_brackets, r_min, r_max, n_points. Throws
/// ConfigError naming the offending key; parameter errors (not warnings)
/// from validate_params are fatal.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Energy window for magnetic number m: config bounds where given, the
/// default scan otherwise.
EnergyScan scan_for(const RunConfig& cfg, const PhysicalParams& p, int m, SolverMode mode);

/// 12 significant digits, C locale.
std::string format_number(double value);

using CsvRow = std::vector<std::string>;
std::string render_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

inline const std::vector<std::string> kSpectrumHeader{"n",  "m",  "Z0",       "r0",       "m0",    "B0",
                                                      "mode", "E", "kappa_bar", "beta1_sq", "beta2", "residual"};
inline const std::vector<std::string> kDensityHeader{"r", "u", "rho"};
inline const std::vector<std::string> kApproxHeader{"r", "U", "Ua", "rel_err"};

CsvRow spectrum_row(const PhysicalParams& p, SolverMode mode, const BoundState& state);
std::string render_density_csv(const RadialWavefunction& wf, const SampledFunction& rho);
std::string render_approx_csv(const ApproxErrorReport& report);
/// Key-sorted JSON document for a comparison record, pretty-printed.
std::string render_cross_check_json(const ComparisonRecord& rec);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

inline constexpr double kCrossCheckTolerance = 1e-4;

struct SpectrumOptions {
  std::string config_path;
  std::optional<SolverMode> mode;
  int n_max = 2;
  std::vector<int> m_list{0};
  std::vector<double> z0_list;  ///< sweep over Z0; empty keeps the config value
  std::vector<double> b0_list;  ///< sweep over B0; empty keeps the config value
  std::string out;
};

struct DensityOptions {
  std::string config_path;
  std::optional<SolverMode> mode;
  int n = 0;
  int m = 0;
  std::optional<double> r_max;
  std::optional<std::size_t> points;
  std::string out;
};

struct ApproxCheckOptions {
  double z0 = 0.0;
  double r0 = 0.0;
  RadialWindow window;
  std::size_t points = 401;
  SolverMode mode = SolverMode::derived;
  std::string out;
};

struct CrossCheckOptions {
  std::string config_path;
  std::optional<SolverMode> mode;
  int n = 0;
  int m = 0;
  bool richardson = true;
  std::string out;
};

// Each command returns its exit code; data goes to `out` (or the --out file)
// and diagnostics to `err`.
int cmd_spectrum(const SpectrumOptions& opts, std::ostream& out, std::ostream& err);
int cmd_density(const DensityOptions& opts, std::ostream& out, std::ostream& err);
int cmd_approx_check(const ApproxCheckOptions& opts, std::ostream& out, std::ostream& err);
int cmd_cross_check(const CrossCheckOptions& opts, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgb
