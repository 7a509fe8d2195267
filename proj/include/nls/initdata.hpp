#pragma once

// Initial data: seeded random data of prescribed Sobolev regularity, the
// scheme's projected initial value P_N I_{2N} u^0, and exact plane waves.

#include <complex>
#include <cstdint>
#include <random>

#include "json.hpp"
#include "nls/spectral_field.hpp"

namespace nls {

/// Parameters of û_k = (1+|k|)^{-1/2-γ} g_k, |k| <= k_max.
struct RegularityParams {
  double gamma = 1.0;
  std::uint64_t seed = 0;
  int k_max = 1;

  /// 1/2 < γ <= 1, the range covered by the convergence theory.
  bool in_convergence_range() const { return gamma > 0.5 && gamma <= 1.0; }
  void validate() const;
};

/// Uniform double in [-1, 1) from one 64-bit draw: the top 53 bits give
/// u in [0, 1), returned as 2u - 1. Independent of the standard library's
/// distribution implementations, so streams agree across platforms.
double uniform_symmetric(std::mt19937_64& rng);

/// Coefficients g_k = a + ib with a, b uniform in [-1, 1), drawn in order
/// k = -cutoff..cutoff, a before b.
Field uniform_random_field(int cutoff, std::mt19937_64& rng);

/// Random data with coefficients (1+|k|)^{-1/2-γ} g_k from std::mt19937_64
/// seeded with params.seed; the g_k stream is that of uniform_random_field.
Field random_low_reg(const RegularityParams& params);

/// P_N I_{2N} u0. Exact truncation when u0.cutoff() <= 2N; otherwise modes
/// beyond 2N are folded onto |k| <= 2N exactly as sampling on the 4N+1 grid
/// would alias them.
Field project_initial(const Field& u0, int n_modes);

/// P_N I_{2N} applied to point values on the 4N+1 grid.
Field project_initial(const Samples& samples);

/// Exact solution u(t,x) = c e^{i(kx - (k² + |c|²)t)}.
struct PlaneWaveSolution {
  std::complex<double> amplitude{0.5, 0.0};
  int wavenumber = 1;

  double frequency() const { return double(wavenumber) * wavenumber + std::norm(amplitude); }
};

/// The plane wave at time t, stored with cutoff max(|k|, cutoff).
Field plane_wave_at(const PlaneWaveSolution& sol, double t, int cutoff = 0);

/// Initial-data dump: {"gamma", "seed", "k_max", "modes": [[k, re, im], ...]}.
nlohmann::json initial_data_to_json(const Field& u0, const RegularityParams& params);

}  // namespace nls
