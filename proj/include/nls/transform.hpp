#pragma once

// Transforms between SpectralField and point values, and the dealiased
// product built on them. Backed by Eigen's FFT module.

#include <complex>
#include <string>
#include <unordered_map>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "nls/spectral_field.hpp"

namespace nls {

/// Smallest 5-smooth integer (2^a 3^b 5^c) that is >= min_length.
inline int transform_length(int min_length) {
  for (int n = std::max(min_length, 1);; ++n) {
    int m = n;
    for (int p : {2, 3, 5}) {
      while (m % p == 0) m /= p;
    }
    if (m == 1) return n;
  }
}

/// Zero-padded uniform grid for products of fields in S_N. The length is the
/// first FFT-friendly size >= 4N+1, so any field with cutoff <= 2N is sampled
/// without wrap-around and quadratic products of S_N fields are exact on
/// |k| <= N.
///
/// Holds FFT plans and scratch space: one instance per thread.
template <typename Real>
class PaddedGrid {
 public:
  using Scalar = std::complex<Real>;
  using Values = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit PaddedGrid(int n_modes)
      : n_modes_(n_modes), length_(transform_length(4 * n_modes + 1)), spectrum_(length_) {
    if (n_modes < 1) throw InvalidInputError("PaddedGrid: n_modes must be >= 1");
    fft_.SetFlag(Eigen::FFT<Real>::Unscaled);
  }

  int n_modes() const noexcept { return n_modes_; }
  int length() const noexcept { return length_; }

  /// Samples on the padded grid of the centered coefficient vector
  /// (index k + K for k = -K..K).
  void to_physical(const Values& coeffs, Values& out) {
    const int K = static_cast<int>((coeffs.size() - 1) / 2);
    if (K > 2 * n_modes_) {
      throw AliasingError("PaddedGrid: cutoff " + std::to_string(K) + " exceeds 2N = " + std::to_string(2 * n_modes_));
    }
    spectrum_.setZero();
    for (int k = -K; k <= K; ++k) spectrum_[wrap(k)] = coeffs[k + K];
    out.resize(length_);
    fft_.inv(out.data(), spectrum_.data(), length_);
  }

  void to_physical(const SpectralField<Real>& f, Values& out) { to_physical(f.coeffs(), out); }

  Values to_physical(const SpectralField<Real>& f) {
    Values out;
    to_physical(f.coeffs(), out);
    return out;
  }

  /// Centered coefficients |k| <= cutoff of the trigonometric interpolant.
  void to_spectral(const Values& values, int cutoff, Values& out) {
    if (values.size() != length_) throw InvalidGridError("PaddedGrid: wrong sample count");
    fft_.fwd(spectrum_.data(), values.data(), length_);
    out.resize(2 * cutoff + 1);
    const Real scale = Real(1) / Real(length_);
    for (int k = -cutoff; k <= cutoff; ++k) out[k + cutoff] = scale * spectrum_[wrap(k)];
  }

  SpectralField<Real> to_spectral(const Values& values, int cutoff) {
    SpectralField<Real> out(cutoff);
    to_spectral(values, cutoff, out.coeffs());
    return out;
  }

  /// P_N(fg) for f, g in S_N.
  SpectralField<Real> product(const SpectralField<Real>& f, const SpectralField<Real>& g) {
    if (!f.lies_in(n_modes_) || !g.lies_in(n_modes_)) {
      throw InvalidInputError("dealiased product: factors must lie in S_" + std::to_string(n_modes_));
    }
    to_physical(f, lhs_);
    to_physical(g, rhs_);
    lhs_.array() *= rhs_.array();
    return to_spectral(lhs_, n_modes_);
  }

 private:
  int wrap(int k) const noexcept { return k >= 0 ? k : k + length_; }

  int n_modes_;
  int length_;
  Eigen::FFT<Real> fft_;
  Values spectrum_;
  Values lhs_;
  Values rhs_;
};

namespace detail {

template <typename Real>
PaddedGrid<Real>& thread_grid(int n_modes) {
  thread_local std::unordered_map<int, PaddedGrid<Real>> grids;
  auto it = grids.find(n_modes);
  if (it == grids.end()) it = grids.emplace(n_modes, PaddedGrid<Real>(n_modes)).first;
  return it->second;
}

template <typename Real>
Eigen::FFT<Real>& thread_fft() {
  thread_local Eigen::FFT<Real> fft = [] {
    Eigen::FFT<Real> f;
    f.SetFlag(Eigen::FFT<Real>::Unscaled);
    return f;
  }();
  return fft;
}

}  // namespace detail

/// P_M I_{2M}(fg) for f, g in S_M, which equals the truncated convolution
/// P_M(fg) since fg has no modes beyond 2M.
template <typename Real>
SpectralField<Real> dealiased_product(const SpectralField<Real>& f, const SpectralField<Real>& g, int m) {
  return detail::thread_grid<Real>(m).product(f, g);
}

/// I_{2N}: coefficients f̃_k, |k| <= 2N, of the (4N+1)-point interpolant.
template <typename Real>
SpectralField<Real> forward_interp(const PhysicalSamples<Real>& samples) {
  const int n = samples.n_modes();
  const int M = 4 * n + 1;
  typename PhysicalSamples<Real>::Values spectrum(M);
  detail::thread_fft<Real>().fwd(spectrum.data(), samples.values().data(), M);
  SpectralField<Real> out(2 * n);
  for (int k = -2 * n; k <= 2 * n; ++k) out.at(k) = spectrum[k >= 0 ? k : k + M] / Real(M);
  return out;
}

/// Values of the Fourier series at the 4N+1 points x_j = 2πj/(4N+1).
template <typename Real>
PhysicalSamples<Real> inverse_eval(const SpectralField<Real>& field, int n_modes) {
  if (n_modes < 1) throw InvalidGridError("inverse_eval: n_modes must be >= 1");
  if (field.cutoff() > 2 * n_modes) {
    throw AliasingError("inverse_eval: cutoff " + std::to_string(field.cutoff()) + " exceeds 2N = " +
                        std::to_string(2 * n_modes) + "; use a finer grid");
  }
  const int M = 4 * n_modes + 1;
  const int K = field.cutoff();
  typename PhysicalSamples<Real>::Values spectrum = PhysicalSamples<Real>::Values::Zero(M);
  for (int k = -K; k <= K; ++k) spectrum[k >= 0 ? k : k + M] = field[k];
  typename PhysicalSamples<Real>::Values values(M);
  detail::thread_fft<Real>().inv(values.data(), spectrum.data(), M);
  return PhysicalSamples<Real>(n_modes, std::move(values));
}

}  // namespace nls
