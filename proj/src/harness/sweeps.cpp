#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "nls/harness.hpp"
#include "parallel.hpp"

namespace nls {

namespace {

// Accumulated rounding in a run of `steps` steps, relative to the solution
// size. Empirically the per-step error of the FFT round trip is a few ulps;
// sqrt growth assumes uncorrelated rounding.
constexpr double kRoundoffPerStep = 1e-14;

double roundoff_floor(int steps, double scale) {
  return kRoundoffPerStep * std::sqrt(double(std::max(steps, 1))) * std::max(1.0, scale);
}

struct Cell {
  double tau = 0.0;
  int n_modes = 0;
  std::size_t seed_index = 0;
  Field result;
  double runtime_ms = 0.0;
};

Field run_cell(const Field& u0, double tau, int n_modes, double t_final, Integrator integrator) {
  const SchemeParams params{tau, n_modes, t_final};
  EvolveOptions options;
  options.integrator = integrator;
  return evolve(project_initial(u0, n_modes), params, options).final_state;
}

void run_cells(std::vector<Cell>& cells, const std::function<Field(const Cell&)>& body) {
  detail::parallel_for(cells.size(), worker_count(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    cells[i].result = body(cells[i]);
    cells[i].runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });
}

std::vector<std::uint64_t> effective_seeds(const ExperimentConfig& config) {
  if (config.reference == ReferenceKind::kExactPlaneWave) return {0};
  return config.seeds;
}

// Fills mean rows, saturation flags and slopes once per-seed rows are in
// place (ordered coarse to fine, then by seed).
void finish_report(ConvergenceReport& report, std::size_t seeds_per_row) {
  const double threshold = kSaturationFactor * report.floor_estimate;
  for (auto& row : report.rows) row.saturated = row.error_l2 <= threshold;

  for (std::size_t begin = 0; begin < report.rows.size(); begin += seeds_per_row) {
    ReportRow mean = report.rows[begin];
    mean.seed.reset();
    double log_sum = 0.0, runtime = 0.0;
    for (std::size_t j = begin; j < begin + seeds_per_row; ++j) {
      log_sum += std::log(report.rows[j].error_l2);
      runtime += report.rows[j].runtime_ms;
    }
    mean.error_l2 = std::exp(log_sum / double(seeds_per_row));
    mean.runtime_ms = runtime / double(seeds_per_row);
    mean.saturated = mean.error_l2 <= threshold;
    report.mean_rows.push_back(mean);
  }

  if (report.mean_rows.size() >= 2) {
    EocResult fit = eoc(report);
    report.slopes = std::move(fit.slopes);
    report.fitted_slope = fit.fitted_slope;
  }
}

}  // namespace

Field sweep_initial_data(const ExperimentConfig& config, std::uint64_t seed, int k_max) {
  if (config.reference == ReferenceKind::kExactPlaneWave) return plane_wave_at(config.plane_wave, 0.0);
  return random_low_reg(RegularityParams{config.gamma, seed, k_max});
}

ConvergenceReport temporal_sweep(const ExperimentConfig& config) {
  if (config.kind != ExperimentKind::kTemporalSweep) throw ConfigurationError("temporal_sweep: wrong experiment kind");
  config.validate();
  const int N = config.n_modes;
  const bool exact = config.reference == ReferenceKind::kExactPlaneWave;
  if (exact && std::abs(config.plane_wave.wavenumber) > N) {
    throw ConfigurationError("plane-wave wavenumber exceeds N");
  }

  std::vector<double> taus = config.tau_list;
  std::sort(taus.begin(), taus.end(), std::greater<>());
  const std::vector<std::uint64_t> seeds = effective_seeds(config);
  const int k_max = config.k_max.value_or(2 * N);

  std::vector<Field> initial;
  for (auto seed : seeds) initial.push_back(sweep_initial_data(config, seed, k_max));

  // Sweep cells first, then per seed the reference and, to estimate the
  // reference error, a companion run at twice its step.
  std::vector<Cell> cells;
  for (double tau : taus) {
    for (std::size_t s = 0; s < seeds.size(); ++s) cells.push_back({tau, N, s, {}, 0.0});
  }
  const std::size_t n_sweep = cells.size();
  const double tau_ref = taus.back() / config.reference_refinement;
  if (!exact) {
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      cells.push_back({tau_ref, N, s, {}, 0.0});
      cells.push_back({2 * tau_ref, N, s, {}, 0.0});
    }
  }
  run_cells(cells, [&](const Cell& c) {
    return run_cell(initial[c.seed_index], c.tau, c.n_modes, config.t_final, config.integrator);
  });

  ConvergenceReport report;
  report.config = config;
  std::vector<Field> reference;
  const int finest_steps = SchemeParams{exact ? taus.back() : tau_ref, N, config.t_final}.steps();
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (exact) {
      reference.push_back(plane_wave_at(config.plane_wave, config.t_final, N));
      report.floor_estimate =
          std::max(report.floor_estimate, roundoff_floor(finest_steps, norm_l2(reference.back())));
    } else {
      const Field& ref = cells[n_sweep + 2 * s].result;
      const double reference_error = error_l2(ref, cells[n_sweep + 2 * s + 1].result);
      reference.push_back(ref);
      report.floor_estimate =
          std::max({report.floor_estimate, reference_error, roundoff_floor(finest_steps, norm_l2(ref))});
    }
  }

  for (std::size_t i = 0; i < n_sweep; ++i) {
    const Cell& c = cells[i];
    ReportRow row;
    row.tau = c.tau;
    row.n_modes = N;
    row.seed = seeds[c.seed_index];
    row.error_l2 = error_l2(c.result, reference[c.seed_index]);
    row.runtime_ms = c.runtime_ms;
    report.rows.push_back(row);
  }
  finish_report(report, seeds.size());
  return report;
}

ConvergenceReport spatial_sweep(const ExperimentConfig& config) {
  if (config.kind != ExperimentKind::kSpatialSweep) throw ConfigurationError("spatial_sweep: wrong experiment kind");
  config.validate();
  const bool exact = config.reference == ReferenceKind::kExactPlaneWave;
  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  if (exact && std::abs(config.plane_wave.wavenumber) > ns.front()) {
    throw ConfigurationError("plane-wave wavenumber exceeds the smallest N");
  }
  const int n_ref = config.effective_n_ref();
  const std::vector<std::uint64_t> seeds = effective_seeds(config);
  const int k_max = config.k_max.value_or(2 * n_ref);

  std::vector<Field> initial;
  for (auto seed : seeds) initial.push_back(sweep_initial_data(config, seed, k_max));

  std::vector<Cell> cells;
  for (int n : ns) {
    for (std::size_t s = 0; s < seeds.size(); ++s) cells.push_back({config.tau, n, s, {}, 0.0});
  }
  const std::size_t n_sweep = cells.size();
  if (!exact) {
    for (std::size_t s = 0; s < seeds.size(); ++s) cells.push_back({config.tau, n_ref, s, {}, 0.0});
  }
  run_cells(cells, [&](const Cell& c) {
    return run_cell(initial[c.seed_index], c.tau, c.n_modes, config.t_final, config.integrator);
  });

  ConvergenceReport report;
  report.config = config;
  const int steps = SchemeParams{config.tau, 1, config.t_final}.steps();
  std::vector<Field> reference;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (exact) {
      reference.push_back(plane_wave_at(config.plane_wave, config.t_final));
      report.floor_estimate = std::max(report.floor_estimate, roundoff_floor(steps, norm_l2(reference.back())));
    } else {
      // The reference misses the modes beyond N_ref; their size at t = 0
      // stands in for its spatial error.
      reference.push_back(cells[n_sweep + s].result);
      report.floor_estimate = std::max({report.floor_estimate, norm_l2(project_high(initial[s], n_ref)),
                                        roundoff_floor(steps, norm_l2(reference.back()))});
    }
  }

  for (std::size_t i = 0; i < n_sweep; ++i) {
    const Cell& c = cells[i];
    ReportRow row;
    row.tau = c.tau;
    row.n_modes = c.n_modes;
    row.seed = seeds[c.seed_index];
    row.error_l2 = error_l2(c.result, reference[c.seed_index]);
    row.runtime_ms = c.runtime_ms;
    report.rows.push_back(row);
  }
  finish_report(report, seeds.size());
  return report;
}

}  // namespace nls
