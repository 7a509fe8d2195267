#pragma once

#include <cmath>
#include <string>

#include "nls/errors.hpp"

namespace nls {

/// Discretisation contract: step size, mode cutoff N and final time T.
struct SchemeParams {
  double tau = 0.0;
  int n_modes = 0;
  double t_final = 0.0;

  /// Tolerance on T/tau being an integer.
  static constexpr double kStepCountTolerance = 1e-9;

  void validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigurationError("tau must be positive, got " + std::to_string(tau));
    if (n_modes < 1) throw ConfigurationError("n_modes must be >= 1, got " + std::to_string(n_modes));
    // T = 0 is allowed (zero steps).
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigurationError("t_final must be >= 0");
    const double ratio = t_final / tau;
    if (std::abs(ratio - std::round(ratio)) > kStepCountTolerance) {
      throw ConfigurationError("t_final = " + std::to_string(t_final) + " is not an integer multiple of tau = " +
                               std::to_string(tau));
    }
  }

  int steps() const {
    validate();
    return static_cast<int>(std::llround(t_final / tau));
  }

  double time(int n) const { return double(n) * tau; }
};

/// Monitoring record emitted after step n.
struct StepObservation {
  int step_index = 0;
  double time = 0.0;
  double mass = 0.0;           // ‖u^n‖_{L²}
  double sobolev_norm = 0.0;   // ‖u^n‖_{H^γ}
};

}  // namespace nls
