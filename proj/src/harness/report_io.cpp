#include <charconv>
#include <cmath>
#include <ostream>

#include "nls/harness.hpp"

namespace nls {

namespace {

// Shortest round-trip form, independent of stream state and locale.
std::string format_number(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

nlohmann::json row_to_json(const ReportRow& row) {
  nlohmann::json j{{"tau", row.tau},       {"n_modes", row.n_modes},       {"error_l2", row.error_l2},
                   {"runtime_ms", row.runtime_ms}, {"saturated", row.saturated}};
  j["seed"] = row.seed ? nlohmann::json(*row.seed) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json optional_number(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  const ExperimentConfig& c = report.config;
  out << kCsvHeader << '\n';
  for (const auto& row : report.rows) {
    out << c.id() << ',' << to_string(c.kind) << ',' << format_number(c.gamma) << ',' << format_number(row.tau)
        << ',' << row.n_modes << ',' << format_number(c.t_final) << ',' << row.seed.value_or(0) << ','
        << format_number(row.error_l2) << ',' << format_number(row.runtime_ms) << ','
        << (row.saturated ? "true" : "false") << '\n';
  }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j{{"experiment_id", c.id()},
                   {"kind", to_string(c.kind)},
                   {"gamma", c.gamma},
                   {"seeds", c.seeds},
                   {"t_final", c.t_final},
                   {"reference", to_string(c.reference)},
                   {"integrator", c.integrator == Integrator::kLieSplitting ? "lie" : "low-regularity"}};
  if (c.kind == ExperimentKind::kTemporalSweep) {
    j["tau_list"] = c.tau_list;
    j["n_modes"] = c.n_modes;
    j["reference_refinement"] = c.reference_refinement;
  } else if (c.kind == ExperimentKind::kSpatialSweep) {
    j["n_list"] = c.n_list;
    j["tau"] = c.tau;
    j["n_ref"] = c.effective_n_ref();
  } else {
    j["n_modes"] = c.n_modes;
    j["tau"] = c.tau;
  }
  if (c.k_max) j["k_max"] = *c.k_max;
  if (c.reference == ReferenceKind::kExactPlaneWave) {
    j["plane_wave"] = {{"amplitude", {c.plane_wave.amplitude.real(), c.plane_wave.amplitude.imag()}},
                       {"wavenumber", c.plane_wave.wavenumber}};
  }
  return j;
}

nlohmann::json report_to_json(const ConvergenceReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) rows.push_back(row_to_json(row));
  nlohmann::json mean_rows = nlohmann::json::array();
  for (const auto& row : report.mean_rows) mean_rows.push_back(row_to_json(row));
  nlohmann::json slopes = nlohmann::json::array();
  for (double s : report.slopes) slopes.push_back(optional_number(s));
  return {{"config", config_to_json(report.config)},
          {"report",
           {{"rows", rows},
            {"mean_rows", mean_rows},
            {"slopes", slopes},
            {"fitted_slope", report.fitted_slope ? optional_number(*report.fitted_slope) : nlohmann::json(nullptr)},
            {"floor_estimate", report.floor_estimate}}}};
}

}  // namespace nls
