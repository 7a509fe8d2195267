#pragma once

// Seeded generators for property tests. Every property runs over a fixed
// number of cases drawn from one stream, so failures reproduce exactly.

#include <complex>
#include <cstdint>
#include <random>

#include "nls/initdata.hpp"
#include "nls/spectral_field.hpp"
#include "nls/spectral_ops.hpp"

namespace nls::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return lo + (hi - lo) * 0.5 * (uniform_symmetric(rng_) + 1.0); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % std::uint64_t(hi - lo + 1)); }
  std::complex<double> unimodular() { return std::polar(1.0, real(0.0, 6.283185307179586)); }

  /// Random coefficients in [-1,1]+i[-1,1] on |k| <= cutoff.
  Field field(int cutoff) { return uniform_random_field(cutoff, rng_); }

  /// Random field in S_n stored with a larger cutoff (zero padding), to
  /// exercise the "lies in S_N" path.
  Field padded_field(int n, int extra) { return field(n).resized(n + extra); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const Field& a, const Field& b) { return sup_norm(a - b); }

/// Brute-force truncated convolution P_m(fg).
inline Field direct_product(const Field& f, const Field& g, int m) {
  Field out(m);
  for (int k = -m; k <= m; ++k) {
    std::complex<double> acc = 0.0;
    for (int k1 = -f.cutoff(); k1 <= f.cutoff(); ++k1) acc += f[k1] * g[k - k1];
    out.at(k) = acc;
  }
  return out;
}

}  // namespace nls::testing
