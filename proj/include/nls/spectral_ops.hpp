#pragma once

// Fourier multipliers, projections and norms on SpectralField.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>

#include "nls/spectral_field.hpp"

namespace nls {

/// Free Schrödinger flow e^{it∂_x²}: mode k picks up e^{-itk²}.
template <typename Real>
SpectralField<Real> free_flow(const SpectralField<Real>& f, double t) {
  SpectralField<Real> out(f.cutoff());
  const int K = f.cutoff();
  for (int k = -K; k <= K; ++k) {
    const double phase = -t * double(k) * double(k);
    out.coeffs()[k + K] = f.coeffs()[k + K] * std::complex<Real>(Real(std::cos(phase)), Real(std::sin(phase)));
  }
  return out;
}

/// ∂_x^{-1}: mode k scaled by (ik)^{-1}, zero mode annihilated.
template <typename Real>
SpectralField<Real> inv_derivative(const SpectralField<Real>& f) {
  SpectralField<Real> out(f.cutoff());
  const int K = f.cutoff();
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    // 1/(ik) = -i/k
    out.coeffs()[k + K] = f.coeffs()[k + K] * std::complex<Real>(0, Real(-1) / Real(k));
  }
  return out;
}

/// P_N: keeps |k| <= n. The result is stored with cutoff min(n, f.cutoff()).
template <typename Real>
SpectralField<Real> project_low(const SpectralField<Real>& f, int n) {
  return f.resized(std::min(n, f.cutoff()));
}

/// P_{>N}: keeps |k| > n.
template <typename Real>
SpectralField<Real> project_high(const SpectralField<Real>& f, int n) {
  SpectralField<Real> out = f;
  const int K = f.cutoff();
  const int m = std::min(n, K);
  out.coeffs().segment(K - m, 2 * m + 1).setZero();
  return out;
}

/// P_0: the mean (k = 0 coefficient).
template <typename Real>
std::complex<Real> zero_mode(const SpectralField<Real>& f) {
  return f[0];
}

/// Coefficients of the pointwise complex conjugate: k -> conj(f̂_{-k}).
template <typename Real>
SpectralField<Real> conjugate(const SpectralField<Real>& f) {
  return SpectralField<Real>(f.cutoff(), f.coeffs().reverse().conjugate());
}

template <typename Real>
Real norm_l2(const SpectralField<Real>& f) {
  return std::sqrt(Real(2) * std::numbers::pi_v<Real> * f.coeffs().squaredNorm());
}

/// ‖f‖_{H^s} with weights (1+k²)^s.
template <typename Real>
Real norm_hs(const SpectralField<Real>& f, double s) {
  if (s < 0) throw InvalidInputError("norm_hs: negative Sobolev index");
  const int K = f.cutoff();
  Real sum = 0;
  for (int k = -K; k <= K; ++k) {
    sum += Real(std::pow(1.0 + double(k) * double(k), s)) * std::norm(f.coeffs()[k + K]);
  }
  return std::sqrt(Real(2) * std::numbers::pi_v<Real> * sum);
}

/// Discrete L² norm on a uniform grid x_j = 2πj/N with quadrature weight 2π/N,
/// so that the constant 1 has norm √(2π) like the continuous norm.
template <typename Real>
Real norm_l2_grid(std::span<const std::complex<Real>> samples) {
  if (samples.empty()) return Real(0);
  Real sum = 0;
  for (const auto& w : samples) sum += std::norm(w);
  return std::sqrt(Real(2) * std::numbers::pi_v<Real> / Real(samples.size()) * sum);
}

template <typename Real>
Real sup_norm(const SpectralField<Real>& f) {
  return f.size() == 0 ? Real(0) : f.coeffs().cwiseAbs().maxCoeff();
}

/// max_k |a_k - b_k| / max_k |b_k|; falls back to the absolute difference when
/// b vanishes.
template <typename Real>
Real relative_sup_difference(const SpectralField<Real>& a, const SpectralField<Real>& b) {
  const Real diff = sup_norm(a - b);
  const Real scale = sup_norm(b);
  return scale > Real(0) ? diff / scale : diff;
}

}  // namespace nls
