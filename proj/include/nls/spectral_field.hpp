#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "nls/errors.hpp"

namespace nls {

/// Fourier coefficients of a 2π-periodic function on the symmetric mode
/// range k = -K..K, stored densely with k at index k + K. Modes with |k| > K
/// are implicitly zero.
template <typename Real>
class SpectralField {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  SpectralField() : SpectralField(0) {}

  explicit SpectralField(int cutoff) : cutoff_(checked_cutoff(cutoff)), coeffs_(Coeffs::Zero(2 * cutoff + 1)) {}

  SpectralField(int cutoff, Coeffs coeffs) : cutoff_(checked_cutoff(cutoff)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != 2 * cutoff_ + 1) {
      throw InvalidInputError("SpectralField: expected " + std::to_string(2 * cutoff_ + 1) + " coefficients, got " +
                              std::to_string(coeffs_.size()));
    }
  }

  static SpectralField constant(Scalar c, int cutoff = 0) {
    SpectralField f(cutoff);
    f.at(0) = c;
    return f;
  }

  /// amp * e^{ikx}, stored with cutoff max(|k|, cutoff).
  static SpectralField mode(int k, Scalar amp, int cutoff = 0) {
    SpectralField f(std::max(std::abs(k), cutoff));
    f.at(k) = amp;
    return f;
  }

  int cutoff() const noexcept { return cutoff_; }
  Eigen::Index size() const noexcept { return coeffs_.size(); }

  Scalar operator[](int k) const noexcept { return std::abs(k) <= cutoff_ ? coeffs_[k + cutoff_] : Scalar(0); }

  Scalar& at(int k) {
    if (std::abs(k) > cutoff_) {
      throw std::out_of_range("mode " + std::to_string(k) + " outside cutoff " + std::to_string(cutoff_));
    }
    return coeffs_[k + cutoff_];
  }

  const Coeffs& coeffs() const noexcept { return coeffs_; }
  Coeffs& coeffs() noexcept { return coeffs_; }

  /// True iff the field lies in S_n: no nonzero coefficient with |k| > n.
  bool lies_in(int n) const {
    if (cutoff_ <= n) return true;
    for (int k = n + 1; k <= cutoff_; ++k) {
      if ((*this)[k] != Scalar(0) || (*this)[-k] != Scalar(0)) return false;
    }
    return true;
  }

  /// Same function stored with a different cutoff; shrinking drops |k| > cutoff.
  SpectralField resized(int cutoff) const {
    SpectralField out(cutoff);
    const int common = std::min(cutoff, cutoff_);
    out.coeffs_.segment(cutoff - common, 2 * common + 1) = coeffs_.segment(cutoff_ - common, 2 * common + 1);
    return out;
  }

  template <typename NewReal>
  SpectralField<NewReal> cast() const {
    return SpectralField<NewReal>(cutoff_, coeffs_.template cast<std::complex<NewReal>>());
  }

  SpectralField& operator+=(const SpectralField& other) { return accumulate(other, Real(1)); }
  SpectralField& operator-=(const SpectralField& other) { return accumulate(other, Real(-1)); }
  SpectralField& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, Scalar s) { return a *= s; }
  friend SpectralField operator*(Scalar s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(Real s, SpectralField a) { return a *= Scalar(s); }
  friend SpectralField operator-(SpectralField a) { return a *= Scalar(-1); }

  /// Exact equality as functions: differing cutoffs compare equal when the
  /// extra modes are zero.
  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    const int k_max = std::max(a.cutoff_, b.cutoff_);
    for (int k = -k_max; k <= k_max; ++k) {
      if (a[k] != b[k]) return false;
    }
    return true;
  }

 private:
  static int checked_cutoff(int cutoff) {
    if (cutoff < 0) throw InvalidInputError("SpectralField: negative cutoff " + std::to_string(cutoff));
    return cutoff;
  }

  SpectralField& accumulate(const SpectralField& other, Real sign) {
    if (other.cutoff_ > cutoff_) *this = resized(other.cutoff_);
    coeffs_.segment(cutoff_ - other.cutoff_, other.coeffs_.size()) += sign * other.coeffs_;
    return *this;
  }

  int cutoff_;
  Coeffs coeffs_;
};

/// Point values on the interpolation grid x_j = 2πj/(4N+1), j = 0..4N.
/// The symmetric indexing n = -2N..2N names the same points modulo 2π.
template <typename Real>
class PhysicalSamples {
 public:
  using Scalar = std::complex<Real>;
  using Values = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  PhysicalSamples(int n_modes, Values values) : n_modes_(n_modes), values_(std::move(values)) {
    if (n_modes_ < 1 || values_.size() != 4 * n_modes_ + 1) {
      throw InvalidGridError("PhysicalSamples: " + std::to_string(values_.size()) + " samples do not form a " +
                             "4N+1 grid for N=" + std::to_string(n_modes_));
    }
  }

  /// Deduces N from the sample count.
  static PhysicalSamples from_values(Values values) {
    const auto n = values.size();
    if (n < 5 || (n - 1) % 4 != 0) {
      throw InvalidGridError("sample count " + std::to_string(n) + " is not of the form 4N+1 with N >= 1");
    }
    return PhysicalSamples(static_cast<int>((n - 1) / 4), std::move(values));
  }

  int n_modes() const noexcept { return n_modes_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  const Values& values() const noexcept { return values_; }

  static Real point(int j, int n_modes) {
    return Real(2) * std::numbers::pi_v<Real> * Real(j) / Real(4 * n_modes + 1);
  }

 private:
  int n_modes_;
  Values values_;
};

using Field = SpectralField<double>;
using Samples = PhysicalSamples<double>;

}  // namespace nls
