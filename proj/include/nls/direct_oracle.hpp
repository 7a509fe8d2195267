#pragma once

// Brute-force evaluation of the twisted one-step map straight from its
// Fourier-side integral form. Cost O(N^3); meant as an independent check of
// the FFT-based flows, not for time stepping.

#include <complex>
#include <string>

#include "nls/scheme_params.hpp"
#include "nls/spectral_field.hpp"

namespace nls {

struct OracleOptions {
  static constexpr int kDefaultMaxModes = 32;
  int max_modes = kDefaultMaxModes;
};

namespace detail {

/// ∫_0^τ e^{2i·a·s} ds for an integer frequency product a; the a == 0 branch
/// is selected by the exact integer test.
inline std::complex<double> oscillatory_integral(long long a, double tau) {
  if (a == 0) return {tau, 0.0};
  // (e^{iθ} - 1)/(2ia) with θ = 2aτ, written as sin(θ/2) e^{iθ/2} / a to
  // avoid cancellation for small θ.
  const double half = double(a) * tau;
  return std::polar(std::sin(half) / double(a), half);
}

}  // namespace detail

/// Phase φ(k,k1,k2,k3) = k² + k1² - k2² - k3².
inline long long interaction_phase(long long k, long long k1, long long k2, long long k3) {
  return k * k + k1 * k1 - k2 * k2 - k3 * k3;
}

/// Weight of the triple (k1,k2,k3) -> k = k1+k2+k3 at time t_n:
/// e^{it_nφ}[∫_0^τ e^{2iskk1} ds + ∫_0^τ (e^{2isk2k3} - 1) ds].
inline std::complex<double> interaction_weight(int k, int k1, int k2, int k3, double t_n, double tau) {
  const long long phi = interaction_phase(k, k1, k2, k3);
  const std::complex<double> inner = detail::oscillatory_integral(static_cast<long long>(k) * k1, tau) +
                                     detail::oscillatory_integral(static_cast<long long>(k2) * k3, tau) -
                                     std::complex<double>(tau, 0.0);
  return std::polar(1.0, t_n * double(phi)) * inner;
}

/// Φ^n_{τ,N}(v) by direct summation over k = k1+k2+k3 with |k2+k3| <= N and
/// |k| <= N. The conjugate factor is \hat{\bar v}_{k1} = conj(v̂_{-k1}).
template <typename Real>
SpectralField<Real> step_direct_oracle(const SpectralField<Real>& v, double t_n, const SchemeParams& params,
                                       const OracleOptions& options = {}) {
  const int N = params.n_modes;
  if (N > options.max_modes) {
    throw CostGuardError("direct oracle refuses N = " + std::to_string(N) + " (limit " +
                         std::to_string(options.max_modes) + ")");
  }
  if (N < 1) throw InvalidInputError("direct oracle: n_modes must be >= 1");
  if (!v.lies_in(N)) throw InvalidInputError("direct oracle: input not in S_" + std::to_string(N));
  if (t_n < 0) throw InvalidInputError("direct oracle: negative t_n");

  const SpectralField<Real> f = v.resized(N);
  SpectralField<Real> out = f;
  for (int k = -N; k <= N; ++k) {
    std::complex<double> acc = 0.0;
    for (int k1 = -N; k1 <= N; ++k1) {
      const std::complex<double> conj_factor = std::conj(std::complex<double>(f[-k1]));
      if (conj_factor == 0.0) continue;
      const int pair_sum = k - k1;  // k2 + k3
      if (std::abs(pair_sum) > N) continue;
      for (int k2 = -N; k2 <= N; ++k2) {
        const int k3 = pair_sum - k2;
        if (std::abs(k3) > N) continue;
        const std::complex<double> amp = conj_factor * std::complex<double>(f[k2]) * std::complex<double>(f[k3]);
        if (amp == 0.0) continue;
        acc += interaction_weight(k, k1, k2, k3, t_n, params.tau) * amp;
      }
    }
    out.at(k) -= std::complex<Real>(std::complex<double>(0.0, 1.0) * acc);
  }
  return out;
}

}  // namespace nls
