#include "nls/initdata.hpp"

#include <cmath>
#include <string>

#include "nls/field_io.hpp"
#include "nls/transform.hpp"

namespace nls {

void RegularityParams::validate() const {
  if (!std::isfinite(gamma) || gamma < 0) throw ConfigurationError("gamma must be a finite value >= 0");
  if (k_max < 1) throw ConfigurationError("k_max must be >= 1, got " + std::to_string(k_max));
}

double uniform_symmetric(std::mt19937_64& rng) {
  const double unit = double(rng() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Field uniform_random_field(int cutoff, std::mt19937_64& rng) {
  Field f(cutoff);
  for (int k = -cutoff; k <= cutoff; ++k) {
    const double a = uniform_symmetric(rng);
    const double b = uniform_symmetric(rng);
    f.at(k) = {a, b};
  }
  return f;
}

Field random_low_reg(const RegularityParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  Field f = uniform_random_field(params.k_max, rng);
  for (int k = -params.k_max; k <= params.k_max; ++k) {
    f.at(k) *= std::pow(1.0 + std::abs(k), -0.5 - params.gamma);
  }
  return f;
}

Field project_initial(const Field& u0, int n_modes) {
  if (n_modes < 1) throw InvalidInputError("project_initial: n_modes must be >= 1");
  const int K = u0.cutoff();
  if (K <= 2 * n_modes) return u0.resized(n_modes);

  // Sampling at x_j = 2πj/M sees mode k as mode k mod M.
  const int M = 4 * n_modes + 1;
  Field folded(2 * n_modes);
  for (int k = -K; k <= K; ++k) {
    int j = k % M;
    if (j > 2 * n_modes) j -= M;
    if (j < -2 * n_modes) j += M;
    folded.at(j) += u0[k];
  }
  return folded.resized(n_modes);
}

Field project_initial(const Samples& samples) {
  return forward_interp(samples).resized(samples.n_modes());
}

Field plane_wave_at(const PlaneWaveSolution& sol, double t, int cutoff) {
  const double phase = -sol.frequency() * t;
  return Field::mode(sol.wavenumber, sol.amplitude * std::polar(1.0, phase), cutoff);
}

nlohmann::json initial_data_to_json(const Field& u0, const RegularityParams& params) {
  return {{"gamma", params.gamma}, {"seed", params.seed}, {"k_max", params.k_max}, {"modes", field_to_json(u0)}};
}

}  // namespace nls
