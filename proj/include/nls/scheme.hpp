#pragma once

// Fully discrete low-regularity integrator for i∂_t u + ∂_xx u = |u|²u on the
// torus: the one-step flow in the original variable u, the same flow in the
// twisted variable v = e^{-it∂_x²}u, a Lie splitting baseline, and the
// time-stepping drivers.

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "nls/scheme_params.hpp"
#include "nls/spectral_field.hpp"
#include "nls/spectral_ops.hpp"
#include "nls/transform.hpp"

namespace nls {

/// The ten pieces of the one-step map, in the order they are printed. Writing
/// E = e^{iτ∂_x²}, D = ∂_x^{-1}, q = P_N(u²):
enum class Term : int {
  kFreeFlow = 0,          // E u
  kAntiderivativeFlowed,  // ½ D P_N[(E^{-1} D ū) · E q]
  kAntiderivativePlain,   // -½ E D P_N[D ū · q]
  kMeanCubic,             // -iτ P_0[ū q]
  kMeanConjugate,         // -iτ (E q - P_0 q) P_0 ū
  kSquareFlowed,          // ½ E P_N[ū · E^{-1} P_N (E D u)²]
  kSquarePlain,           // -½ E P_N[ū · P_N (D u)²]
  kCubic,                 // iτ E P_N[ū q]
  kMeanLinear,            // -2iτ E P_N[ū u] P_0 u
  kMeanSquared,           // iτ E ū (P_0 u)²
};

inline constexpr int kTermCount = 10;

constexpr std::string_view term_name(Term t) {
  constexpr std::array<std::string_view, kTermCount> names = {
      "free_flow",    "antiderivative_flowed", "antiderivative_plain", "mean_cubic",  "mean_conjugate",
      "square_flowed", "square_plain",         "cubic",                "mean_linear", "mean_squared"};
  return names[static_cast<int>(t)];
}

template <typename Real>
using TermFields = std::array<SpectralField<Real>, kTermCount>;

namespace detail {

template <typename Real>
SpectralField<Real> checked_input(const SpectralField<Real>& u, int n_modes, const char* who) {
  if (n_modes < 1) throw InvalidInputError(std::string(who) + ": n_modes must be >= 1");
  if (!u.lies_in(n_modes)) throw InvalidInputError(std::string(who) + ": input not in S_" + std::to_string(n_modes));
  return u.resized(n_modes);
}

template <typename Real>
constexpr std::complex<Real> i_times(double x) {
  return {Real(0), Real(x)};
}

}  // namespace detail

/// Φ_{τ,N}(u) split into its ten terms, each evaluated literally from the
/// spectral operators and dealiased products. Summing the array gives the
/// one-step map; the fused LowRegularityStepper must agree with that sum.
template <typename Real>
TermFields<Real> untwisted_terms(const SpectralField<Real>& input, const SchemeParams& params) {
  using F = SpectralField<Real>;
  const int N = params.n_modes;
  const double tau = params.tau;
  const F u = detail::checked_input(input, N, "untwisted_terms");
  const auto prod = [N](const F& a, const F& b) { return dealiased_product(a, b, N); };
  const auto E = [tau](const F& f) { return free_flow(f, tau); };
  const auto E_inv = [tau](const F& f) { return free_flow(f, -tau); };
  const auto D = [](const F& f) { return inv_derivative(f); };
  const auto i_tau = detail::i_times<Real>(tau);

  const F u_bar = conjugate(u);
  const F q = prod(u, u);
  const auto u0 = zero_mode(u);
  const F Du = D(u);
  const F EDu = E(Du);

  TermFields<Real> t;
  t[0] = E(u);
  t[1] = Real(0.5) * D(prod(E_inv(D(u_bar)), E(q)));
  t[2] = Real(-0.5) * E(D(prod(D(u_bar), q)));
  t[3] = F::constant(-i_tau * zero_mode(prod(u_bar, q)), N);
  t[4] = (E(q) - F::constant(zero_mode(q), N)) * (-i_tau * zero_mode(u_bar));
  t[5] = Real(0.5) * E(prod(u_bar, E_inv(prod(EDu, EDu))));
  t[6] = Real(-0.5) * E(prod(u_bar, prod(Du, Du)));
  t[7] = E(prod(u_bar, q)) * i_tau;
  t[8] = E(prod(u_bar, u)) * (Real(-2) * i_tau * u0);
  t[9] = E(u_bar) * (i_tau * u0 * u0);
  for (auto& term : t) term = term.resized(N);
  return t;
}

/// Φ^n_{τ,N}(v) split into the same ten groups, written in the twisted
/// variable with the explicit t_n-dependent free flows.
template <typename Real>
TermFields<Real> twisted_terms(const SpectralField<Real>& input, double t_n, const SchemeParams& params) {
  using F = SpectralField<Real>;
  const int N = params.n_modes;
  const double tau = params.tau;
  const double t_next = t_n + tau;
  if (t_n < 0) throw InvalidInputError("twisted_terms: negative t_n");
  const F v = detail::checked_input(input, N, "twisted_terms");
  const auto prod = [N](const F& a, const F& b) { return dealiased_product(a, b, N); };
  const auto flow = [](const F& f, double t) { return free_flow(f, t); };
  const auto D = [](const F& f) { return inv_derivative(f); };
  const auto i_tau = detail::i_times<Real>(tau);

  const F v_bar = conjugate(v);
  const F w = flow(v, t_n);          // e^{it_n∂²} v
  const F wq = prod(w, w);           // P_N (e^{it_n∂²} v)²
  const F v_bar_n = flow(v_bar, -t_n);  // e^{-it_n∂²} v̄
  const F z = flow(D(v), t_next);
  const F y = flow(D(v), t_n);
  const auto v0 = zero_mode(v);
  const auto v_bar0 = zero_mode(v_bar);

  TermFields<Real> t;
  t[0] = v;
  t[1] = Real(0.5) * flow(D(prod(flow(D(v_bar), -t_next), flow(wq, tau))), -t_next);
  t[2] = Real(-0.5) * flow(D(prod(flow(D(v_bar), -t_n), wq)), -t_n);
  t[3] = F::constant(-i_tau * zero_mode(prod(v_bar_n, wq)), N);
  t[4] = flow(wq, -t_n) * (-i_tau * v_bar0) + F::constant(i_tau * zero_mode(wq) * v_bar0, N);
  t[5] = Real(0.5) * flow(prod(v_bar_n, flow(prod(z, z), -tau)), -t_n);
  t[6] = Real(-0.5) * flow(prod(v_bar_n, prod(y, y)), -t_n);
  t[7] = flow(prod(v_bar_n, wq), -t_n) * i_tau;
  t[8] = flow(prod(v_bar_n, w), -t_n) * (Real(-2) * i_tau * v0);
  t[9] = flow(v_bar, -2.0 * t_n) * (i_tau * v0 * v0);
  for (auto& term : t) term = term.resized(N);
  return t;
}

template <typename Real>
SpectralField<Real> sum_terms(const TermFields<Real>& terms) {
  SpectralField<Real> out = terms[0];
  for (int j = 1; j < kTermCount; ++j) out += terms[j];
  return out;
}

/// Φ_{τ,N} with all ten terms fused onto one padded grid: twelve FFTs of
/// length >= 4N+1 per step. Reusable across steps of fixed (N, τ); not
/// thread-safe, use one instance per thread.
template <typename Real>
class LowRegularityStepper {
 public:
  using F = SpectralField<Real>;
  using Scalar = std::complex<Real>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LowRegularityStepper(int n_modes, double tau) : n_(n_modes), tau_(tau), grid_(n_modes) {
    if (!(tau > 0)) throw ConfigurationError("LowRegularityStepper: tau must be positive");
    const int size = 2 * n_ + 1;
    flow_.resize(size);
    antideriv_.resize(size);
    for (int k = -n_; k <= n_; ++k) {
      const double phase = -tau * double(k) * double(k);
      flow_[k + n_] = Scalar(Real(std::cos(phase)), Real(std::sin(phase)));
      antideriv_[k + n_] = k == 0 ? Scalar(0) : Scalar(0, Real(-1) / Real(k));
    }
  }

  int n_modes() const noexcept { return n_; }
  double tau() const noexcept { return tau_; }

  F step(const F& input) {
    const F u = detail::checked_input(input, n_, "step_untwisted");
    const Vec& uh = u.coeffs();
    const Scalar u0 = uh[n_];
    const Scalar i_tau = detail::i_times<Real>(tau_);

    du_ = antideriv_.cwiseProduct(uh);
    edu_ = flow_.cwiseProduct(du_);
    to_physical(uh, U_);
    to_physical(du_, A_);    // D u
    to_physical(edu_, B_);   // E D u

    phys_ = U_.cwiseProduct(U_);
    to_spectral(phys_, q_);
    phys_ = B_.cwiseProduct(B_);
    to_spectral(phys_, r_);
    phys_ = A_.cwiseProduct(A_);
    to_spectral(phys_, s_);

    // ½ D P_N[(E^{-1} D ū)·E q]; E^{-1} D ū is the conjugate of E D u.
    eq_ = flow_.cwiseProduct(q_);
    to_physical(eq_, Q_);
    phys_ = B_.conjugate().cwiseProduct(Q_);
    to_spectral(phys_, t1_);

    // -½ E D P_N[D ū · q]
    to_physical(q_, Q_);
    phys_ = A_.conjugate().cwiseProduct(Q_);
    to_spectral(phys_, t2_);

    // Terms of the form E P_N[ū · X] share one product.
    x_ = Real(0.5) * flow_.conjugate().cwiseProduct(r_) - Real(0.5) * s_ + i_tau * q_ - (Real(2) * i_tau * u0) * uh;
    x_[n_] += i_tau * u0 * u0;
    to_physical(x_, Q_);
    phys_ = U_.conjugate().cwiseProduct(Q_);
    to_spectral(phys_, y_);

    const Scalar mean_cubic = uh.conjugate().cwiseProduct(q_).sum();
    const Scalar mean_coeff = -i_tau * std::conj(u0);

    F out(n_);
    Vec& o = out.coeffs();
    o = flow_.cwiseProduct(uh + y_) + Real(0.5) * antideriv_.cwiseProduct(t1_) -
        Real(0.5) * flow_.cwiseProduct(antideriv_.cwiseProduct(t2_)) + mean_coeff * eq_;
    o[n_] += -i_tau * mean_cubic - mean_coeff * eq_[n_];
    return out;
  }

 private:
  void to_physical(const Vec& coeffs, Vec& out) { grid_.to_physical(coeffs, out); }
  void to_spectral(const Vec& values, Vec& out) { grid_.to_spectral(values, n_, out); }

  int n_;
  double tau_;
  PaddedGrid<Real> grid_;
  Vec flow_, antideriv_;
  Vec du_, edu_, q_, r_, s_, eq_, t1_, t2_, x_, y_;
  Vec U_, A_, B_, Q_, phys_;
};

/// u ↦ e^{iτ∂²} P_N[e^{-iτ|u|²} u], the nonlinear substep evaluated pointwise
/// on the padded grid.
template <typename Real>
class LieSplittingStepper {
 public:
  using F = SpectralField<Real>;
  using Vec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

  LieSplittingStepper(int n_modes, double tau) : n_(n_modes), tau_(tau), grid_(n_modes) {}

  F step(const F& input) {
    const F u = detail::checked_input(input, n_, "step_lie_splitting");
    grid_.to_physical(u, phys_);
    for (Eigen::Index j = 0; j < phys_.size(); ++j) {
      const double phase = -tau_ * double(std::norm(phys_[j]));
      phys_[j] *= std::complex<Real>(Real(std::cos(phase)), Real(std::sin(phase)));
    }
    return free_flow(grid_.to_spectral(phys_, n_), tau_);
  }

 private:
  int n_;
  double tau_;
  PaddedGrid<Real> grid_;
  Vec phys_;
};

/// One step of Φ_{τ,N}.
template <typename Real>
SpectralField<Real> step_untwisted(const SpectralField<Real>& u, const SchemeParams& params) {
  return LowRegularityStepper<Real>(params.n_modes, params.tau).step(u);
}

/// One step of Φ^n_{τ,N} at time t_n.
template <typename Real>
SpectralField<Real> step_twisted(const SpectralField<Real>& v, double t_n, const SchemeParams& params) {
  return sum_terms(twisted_terms(v, t_n, params));
}

template <typename Real>
SpectralField<Real> step_lie_splitting(const SpectralField<Real>& u, const SchemeParams& params) {
  return LieSplittingStepper<Real>(params.n_modes, params.tau).step(u);
}

enum class Integrator { kLowRegularity, kLieSplitting };

struct EvolveOptions {
  Integrator integrator = Integrator::kLowRegularity;
  /// When set, one StepObservation per step is recorded with the H^s norm
  /// at this index.
  std::optional<double> observe_sobolev_index;
  std::function<void(const StepObservation&)> on_step;
};

template <typename Real>
struct EvolveResult {
  SpectralField<Real> final_state;
  std::vector<StepObservation> observations;
};

/// Iterates u^{n+1} = Φ_{τ,N}(u^n) for T/τ steps.
template <typename Real>
EvolveResult<Real> evolve(const SpectralField<Real>& u0, const SchemeParams& params, const EvolveOptions& options = {}) {
  const int steps = params.steps();
  EvolveResult<Real> result{detail::checked_input(u0, params.n_modes, "evolve"), {}};
  if (steps == 0) return result;

  const auto observe = [&](int n) {
    if (!options.observe_sobolev_index) return;
    StepObservation obs{n, params.time(n), double(norm_l2(result.final_state)),
                        double(norm_hs(result.final_state, *options.observe_sobolev_index))};
    if (options.on_step) options.on_step(obs);
    result.observations.push_back(obs);
  };
  if (options.observe_sobolev_index) result.observations.reserve(steps);

  if (options.integrator == Integrator::kLieSplitting) {
    LieSplittingStepper<Real> stepper(params.n_modes, params.tau);
    for (int n = 1; n <= steps; ++n) {
      result.final_state = stepper.step(result.final_state);
      observe(n);
    }
  } else {
    LowRegularityStepper<Real> stepper(params.n_modes, params.tau);
    for (int n = 1; n <= steps; ++n) {
      result.final_state = stepper.step(result.final_state);
      observe(n);
    }
  }
  return result;
}

/// Iterates v^{n+1} = Φ^n_{τ,N}(v^n) from v^0 = u^0 and returns the untwisted
/// final state e^{iT∂²} v^{T/τ}.
template <typename Real>
SpectralField<Real> evolve_twisted(const SpectralField<Real>& u0, const SchemeParams& params) {
  const int steps = params.steps();
  SpectralField<Real> v = detail::checked_input(u0, params.n_modes, "evolve_twisted");
  for (int n = 0; n < steps; ++n) v = step_twisted(v, params.time(n), params);
  return free_flow(v, params.time(steps));
}

}  // namespace nls
