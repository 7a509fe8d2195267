#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "nls/direct_oracle.hpp"
#include "nls/harness.hpp"

namespace nls {

OracleCheckSummary oracle_check(int n_modes, int trials, std::uint64_t seed, const TwistedStepFn& candidate) {
  if (n_modes < 1 || n_modes > OracleOptions::kDefaultMaxModes) {
    throw ConfigurationError("oracle check needs 1 <= N <= " + std::to_string(OracleOptions::kDefaultMaxModes));
  }
  if (trials < 1) throw ConfigurationError("oracle check needs at least one trial");

  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  OracleCheckSummary summary;
  summary.n_modes = n_modes;
  summary.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const Field v = uniform_random_field(n_modes, rng);
    const double t_n = 1.0 + uniform_symmetric(rng);                 // [0, 2)
    const double tau = 0.255 + 0.245 * uniform_symmetric(rng);       // [0.01, 0.5)
    const SchemeParams params{tau, n_modes, tau};
    const Field expected = step_direct_oracle(v, t_n, params);
    const Field actual = candidate ? candidate(v, t_n, params) : step_twisted(v, t_n, params);
    double diff = relative_sup_difference(actual, expected);
    if (std::isnan(diff)) diff = std::numeric_limits<double>::infinity();
    summary.max_relative_diff = std::max(summary.max_relative_diff, diff);
  }
  summary.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  summary.passed = summary.max_relative_diff <= OracleCheckSummary::kTolerance;
  return summary;
}

}  // namespace nls
