#include "kgbound/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"

namespace kgb {
namespace {

using nlohmann::json;

double number_field(const json& doc, const std::string& key) {
  const json& value = doc.at(key);
  if (!value.is_number()) throw ConfigError("config key \"" + key + "\" must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw ConfigError("config key \"" + key + "\" must be finite");
  return v;
}

std::size_t count_field(const json& doc, const std::string& key) {
  const json& value = doc.at(key);
  if (!value.is_number_integer() || value.get<long long>() <= 0) {
    throw ConfigError("config key \"" + key + "\" must be a positive integer");
  }
  return value.get<std::size_t>();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a single JSON object");

  static const char* const kKnown[] = {"m0",      "Z0",         "r0",    "B0",    "mode",
                                       "scan_min", "scan_max", "n_brackets", "r_min", "r_max",
                                       "n_points"};
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || item.key() == k;
    if (!known) throw ConfigError("unknown config key \"" + item.key() + "\"");
  }
  for (const char* required : {"m0", "Z0", "r0", "B0"}) {
    if (!doc.contains(required)) throw ConfigError(std::string("missing config key \"") + required + "\"");
  }

  RunConfig cfg;
  cfg.params = {number_field(doc, "m0"), number_field(doc, "Z0"), number_field(doc, "r0"),
                number_field(doc, "B0")};
  if (doc.contains("mode")) {
    const json& mode = doc.at("mode");
    std::optional<SolverMode> parsed;
    if (mode.is_string()) parsed = parse_solver_mode(mode.get<std::string>());
    if (!parsed) throw ConfigError("config key \"mode\" must be \"derived\" or \"paper\"");
    cfg.mode = *parsed;
  }
  if (doc.contains("scan_min")) cfg.scan_min = number_field(doc, "scan_min");
  if (doc.contains("scan_max")) cfg.scan_max = number_field(doc, "scan_max");
  if (doc.contains("n_brackets")) cfg.n_brackets = count_field(doc, "n_brackets");
  if (doc.contains("r_min")) cfg.r_min = number_field(doc, "r_min");
  if (doc.contains("r_max")) cfg.r_max = number_field(doc, "r_max");
  if (doc.contains("n_points")) cfg.n_points = count_field(doc, "n_points");

  if (cfg.scan_min && cfg.scan_max && !(*cfg.scan_min < *cfg.scan_max)) {
    throw ConfigError("config key \"scan_min\" must be below \"scan_max\"");
  }
  if (cfg.r_min && cfg.r_max && !(*cfg.r_min < *cfg.r_max)) {
    throw ConfigError("config key \"r_min\" must be below \"r_max\"");
  }

  const ValidationReport report = validate_params(cfg.params, cfg.mode);
  for (const auto& issue : report.issues) {
    if (!issue.is_warning()) throw ConfigError("config key \"" + issue.field + "\": " + issue.message);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

EnergyScan scan_for(const RunConfig& cfg, const PhysicalParams& p, int m, SolverMode mode) {
  EnergyScan scan = default_energy_scan(p, m, mode);
  if (cfg.scan_min) scan.e_min = *cfg.scan_min;
  if (cfg.scan_max) scan.e_max = *cfg.scan_max;
  if (cfg.n_brackets) scan.n_brackets = *cfg.n_brackets;
  return scan;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string render_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::string text;
  auto append_row = [&text](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text += ',';
      text += cells[i];
    }
    text += '\n';
  };
  append_row(header);
  for (const auto& row : rows) append_row(row);
  return text;
}

CsvRow spectrum_row(const PhysicalParams& p, SolverMode mode, const BoundState& state) {
  const CoefficientSet c = state.coeffs.value_or(CoefficientSet{});
  return {std::to_string(state.qn.n),
          std::to_string(state.qn.m),
          format_number(p.Z0),
          format_number(p.r0),
          format_number(p.m0),
          format_number(p.B0),
          std::string(to_string(mode)),
          format_number(state.energy),
          format_number(c.kappa_bar),
          format_number(c.beta1_sq),
          format_number(c.beta2),
          format_number(state.residual)};
}

std::string render_density_csv(const RadialWavefunction& wf, const SampledFunction& rho) {
  std::vector<CsvRow> rows;
  rows.reserve(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rows.push_back({format_number(rho.r()[i]), format_number(wf.samples.values()[i]),
                    format_number(rho.values()[i])});
  }
  return render_csv(kDensityHeader, rows);
}

std::string render_approx_csv(const ApproxErrorReport& report) {
  std::vector<CsvRow> rows;
  rows.reserve(report.exact.size());
  for (std::size_t i = 0; i < report.exact.size(); ++i) {
    rows.push_back({format_number(report.exact.r()[i]), format_number(report.exact.values()[i]),
                    format_number(report.approx.values()[i]), format_number(report.rel_error.values()[i])});
  }
  return render_csv(kApproxHeader, rows);
}

std::string render_cross_check_json(const ComparisonRecord& rec) {
  json doc;  // std::map-backed objects keep keys sorted
  doc["n"] = rec.qn.n;
  doc["m"] = rec.qn.m;
  doc["mode"] = std::string(to_string(rec.mode));
  doc["params"] = {{"m0", rec.params.m0}, {"Z0", rec.params.Z0}, {"r0", rec.params.r0}, {"B0", rec.params.B0}};
  doc["E_analytic"] = optional_number(rec.e_analytic);
  doc["E_oracle_approx"] = optional_number(rec.e_oracle_approx);
  doc["abs_diff"] = optional_number(rec.abs_diff);
  doc["rel_diff"] = optional_number(rec.rel_diff);
  doc["grid_error_estimate"] = rec.grid_error_estimate;
  doc["node_count"] = rec.node_count ? json(*rec.node_count) : json(nullptr);
  doc["approximation_error_estimate"] = optional_number(rec.approximation_error_estimate);
  doc["density_peak_r"] = optional_number(rec.density_peak_r);

  json exact = json::array();
  for (const auto& level : rec.oracle_exact) {
    exact.push_back({{"r_min", level.r_min},
                     {"E", optional_number(level.energy)},
                     {"node_count", level.node_count ? json(*level.node_count) : json(nullptr)},
                     {"levels_in_window", level.levels_in_window},
                     {"note", level.note}});
  }
  doc["oracle_exact"] = exact;

  json info;
  info["quoted_energy_window"] = {kQuotedEnergyLow, kQuotedEnergyHigh};
  info["quoted_density_peak_r"] = kQuotedDensityPeak;
  info["E_analytic_in_quoted_window"] =
      rec.e_analytic ? json(*rec.e_analytic >= kQuotedEnergyLow && *rec.e_analytic <= kQuotedEnergyHigh)
                     : json(nullptr);
  info["density_peak_offset"] =
      rec.density_peak_r ? json(*rec.density_peak_r - kQuotedDensityPeak) : json(nullptr);
  doc["informational"] = info;
  doc["notes"] = rec.notes;
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at " + path + ": " + ec.message());
  }
}

}  // namespace kgb
