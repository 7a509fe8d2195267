#pragma once

// Convergence experiments: temporal and spatial sweeps with self-convergence
// or exact references, EOC fitting, and the oracle cross-check.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nls/initdata.hpp"
#include "nls/scheme.hpp"

namespace nls {

enum class ExperimentKind { kTemporalSweep, kSpatialSweep, kSingleRun, kOracleCheck };
enum class ReferenceKind { kFineTau, kExactPlaneWave };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(ReferenceKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);
ReferenceKind parse_reference_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kTemporalSweep;
  std::string experiment_id;
  double gamma = 1.0;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<double> tau_list;  // temporal sweep
  std::vector<int> n_list;       // spatial sweep
  double t_final = 1.0;
  ReferenceKind reference = ReferenceKind::kFineTau;

  int n_modes = 1024;        // fixed N of a temporal sweep
  double tau = 0x1.0p-12;    // fixed τ of a spatial sweep
  int n_ref = 0;             // spatial reference cutoff; 0 means 4 * max(n_list)
  int reference_refinement = 8;  // τ_ref = min(tau_list) / reference_refinement
  std::optional<int> k_max;  // random series cutoff; default 2N (temporal), 2 N_ref (spatial)
  PlaneWaveSolution plane_wave;
  Integrator integrator = Integrator::kLowRegularity;

  /// Throws ConfigurationError on inconsistent settings.
  void validate() const;
  int effective_n_ref() const;
  std::string id() const;
};

struct ReportRow {
  double tau = 0.0;
  int n_modes = 0;
  std::optional<std::uint64_t> seed;  // empty on geometric-mean rows
  double error_l2 = 0.0;
  double runtime_ms = 0.0;
  bool saturated = false;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;       // per (parameter, seed), coarse to fine then by seed
  std::vector<ReportRow> mean_rows;  // geometric mean over seeds, coarse to fine
  double floor_estimate = 0.0;       // error level below which rows count as saturated
  std::vector<double> slopes;        // pairwise EOC of consecutive mean rows
  std::optional<double> fitted_slope;  // least squares over unsaturated mean rows

  /// The refinement parameter h of a row: τ for temporal sweeps, 1/N for
  /// spatial sweeps. Errors behave like h^slope.
  double parameter(const ReportRow& row) const;
};

struct EocResult {
  std::vector<double> slopes;
  std::optional<double> fitted_slope;
};

/// Pairwise slopes log2(e_j/e_{j+1}) / log2(h_j/h_{j+1}) and the least-squares
/// slope of log2 e against log2 h. Pairs with a non-positive error give NaN.
/// Throws DegenerateReportError for fewer than two rows.
EocResult eoc(std::span<const double> params, std::span<const double> errors);

/// Slopes over all mean rows; the fit uses unsaturated mean rows only and is
/// empty when fewer than two remain.
EocResult eoc(const ConvergenceReport& report);

/// L² distance of two fields after padding to a common cutoff.
double error_l2(const Field& a, const Field& b);

/// Rows whose error is within this factor of the floor estimate are
/// saturated.
inline constexpr double kSaturationFactor = 2.0;

ConvergenceReport temporal_sweep(const ExperimentConfig& config);
ConvergenceReport spatial_sweep(const ExperimentConfig& config);

/// Initial data of one sweep cell before projection.
Field sweep_initial_data(const ExperimentConfig& config, std::uint64_t seed, int k_max);

using TwistedStepFn = std::function<Field(const Field&, double t_n, const SchemeParams&)>;

struct OracleCheckSummary {
  static constexpr double kTolerance = 1e-10;
  int n_modes = 0;
  int trials = 0;
  double max_relative_diff = 0.0;
  double runtime_ms = 0.0;
  bool passed = false;
};

/// Compares `candidate` (step_twisted by default) with the direct-sum oracle
/// on `trials` random fields at random t_n and τ.
OracleCheckSummary oracle_check(int n_modes, int trials, std::uint64_t seed, const TwistedStepFn& candidate = {});

/// Worker count for sweeps: NLS_THREADS if set, else hardware concurrency.
int worker_count();

// Output formats.
void write_csv(const ConvergenceReport& report, std::ostream& out);
nlohmann::json report_to_json(const ConvergenceReport& report);
nlohmann::json config_to_json(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "experiment_id,kind,gamma,tau,n_modes,t_final,seed,error_l2,runtime_ms,saturated";

}  // namespace nls
