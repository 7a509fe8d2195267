#include <cmath>
#include <limits>

#include "nls/harness.hpp"

namespace nls {

EocResult eoc(std::span<const double> params, std::span<const double> errors) {
  if (params.size() != errors.size()) throw InvalidInputError("eoc: parameter and error counts differ");
  if (params.size() < 2) throw DegenerateReportError("eoc: need at least two rows, got " + std::to_string(params.size()));

  EocResult result;
  for (std::size_t j = 0; j + 1 < params.size(); ++j) {
    if (errors[j] <= 0 || errors[j + 1] <= 0) {
      result.slopes.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    result.slopes.push_back(std::log2(errors[j] / errors[j + 1]) / std::log2(params[j] / params[j + 1]));
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t j = 0; j < params.size(); ++j) {
    if (errors[j] <= 0) continue;
    const double x = std::log2(params[j]);
    const double y = std::log2(errors[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = double(n) * sxx - sx * sx;
  if (n >= 2 && denom > 0) result.fitted_slope = (double(n) * sxy - sx * sy) / denom;
  return result;
}

EocResult eoc(const ConvergenceReport& report) {
  std::vector<double> params, errors, fit_params, fit_errors;
  for (const auto& row : report.mean_rows) {
    params.push_back(report.parameter(row));
    errors.push_back(row.error_l2);
    if (!row.saturated) {
      fit_params.push_back(params.back());
      fit_errors.push_back(errors.back());
    }
  }
  EocResult result = eoc(params, errors);
  result.fitted_slope.reset();
  if (fit_params.size() >= 2) result.fitted_slope = eoc(fit_params, fit_errors).fitted_slope;
  return result;
}

double ConvergenceReport::parameter(const ReportRow& row) const {
  return config.kind == ExperimentKind::kSpatialSweep ? 1.0 / double(row.n_modes) : row.tau;
}

}  // namespace nls
