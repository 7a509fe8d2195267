#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "nls/harness.hpp"

namespace nls {

namespace {

template <typename T>
bool strictly_monotone(const std::vector<T>& xs) {
  if (xs.size() < 2) return true;
  const bool increasing = xs[1] > xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (increasing ? !(xs[i] > xs[i - 1]) : !(xs[i] < xs[i - 1])) return false;
  }
  return true;
}

void check_step_count(double tau, double t_final) {
  SchemeParams{tau, 1, t_final}.validate();
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kTemporalSweep: return "temporal-sweep";
    case ExperimentKind::kSpatialSweep: return "spatial-sweep";
    case ExperimentKind::kSingleRun: return "single-run";
    case ExperimentKind::kOracleCheck: return "oracle-check";
  }
  return "unknown";
}

std::string_view to_string(ReferenceKind kind) {
  return kind == ReferenceKind::kFineTau ? "fine-tau" : "exact-plane-wave";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::kTemporalSweep, ExperimentKind::kSpatialSweep, ExperimentKind::kSingleRun,
                 ExperimentKind::kOracleCheck}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigurationError("unknown experiment kind '" + std::string(name) + "'");
}

ReferenceKind parse_reference_kind(std::string_view name) {
  if (name == "fine-tau") return ReferenceKind::kFineTau;
  if (name == "exact-plane-wave" || name == "plane-wave") return ReferenceKind::kExactPlaneWave;
  throw ConfigurationError("unknown reference '" + std::string(name) + "' (expected fine-tau or plane-wave)");
}

int ExperimentConfig::effective_n_ref() const {
  if (n_ref > 0) return n_ref;
  return n_list.empty() ? 0 : 4 * *std::max_element(n_list.begin(), n_list.end());
}

void ExperimentConfig::validate() const {
  if (!(t_final > 0)) throw ConfigurationError("t_final must be positive");
  if (reference == ReferenceKind::kFineTau && seeds.empty()) throw ConfigurationError("seed list is empty");
  if (k_max && *k_max < 1) throw ConfigurationError("k_max must be >= 1");
  switch (kind) {
    case ExperimentKind::kTemporalSweep:
      if (tau_list.empty()) throw ConfigurationError("tau list is empty");
      if (!strictly_monotone(tau_list)) throw ConfigurationError("tau list must be strictly monotone");
      if (n_modes < 1) throw ConfigurationError("n_modes must be >= 1");
      for (double t : tau_list) check_step_count(t, t_final);
      if (reference == ReferenceKind::kFineTau) {
        if (reference_refinement < 8) {
          throw ConfigurationError("reference step must be at least 8x finer than the smallest swept tau");
        }
        const double tau_min = *std::min_element(tau_list.begin(), tau_list.end());
        check_step_count(tau_min / reference_refinement, t_final);
      }
      break;
    case ExperimentKind::kSpatialSweep: {
      if (n_list.empty()) throw ConfigurationError("N list is empty");
      if (!strictly_monotone(n_list)) throw ConfigurationError("N list must be strictly monotone");
      if (*std::min_element(n_list.begin(), n_list.end()) < 1) throw ConfigurationError("N values must be >= 1");
      check_step_count(tau, t_final);
      const int n_max = *std::max_element(n_list.begin(), n_list.end());
      if (effective_n_ref() < 4 * n_max) {
        throw ConfigurationError("reference cutoff " + std::to_string(effective_n_ref()) +
                                 " must be at least 4 * max(N) = " + std::to_string(4 * n_max));
      }
      break;
    }
    case ExperimentKind::kSingleRun:
      SchemeParams{tau, n_modes, t_final}.validate();
      break;
    case ExperimentKind::kOracleCheck:
      break;
  }
}

std::string ExperimentConfig::id() const {
  if (!experiment_id.empty()) return experiment_id;
  std::ostringstream os;
  os << to_string(kind) << "-g" << gamma;
  return os.str();
}

double error_l2(const Field& a, const Field& b) {
  const int cutoff = std::max(a.cutoff(), b.cutoff());
  return norm_l2(a.resized(cutoff) - b.resized(cutoff));
}

int worker_count() {
  if (const char* env = std::getenv("NLS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace nls
