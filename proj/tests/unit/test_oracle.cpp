#include <cmath>
#include <complex>

#include "doctest.h"
#include "generators.hpp"
#include "nls/direct_oracle.hpp"
#include "nls/harness.hpp"
#include "nls/scheme.hpp"

using namespace nls;
using nls::testing::Gen;
using nls::testing::max_abs_diff;
using cd = std::complex<double>;

namespace {
const cd kI{0.0, 1.0};
}

TEST_CASE("oscillatory integral closed form") {
  CHECK(detail::oscillatory_integral(0, 0.3) == cd(0.3));
  for (long long a : {-7LL, -1LL, 1LL, 2LL, 500LL}) {
    for (double tau : {1e-9, 0.01, 0.7}) {
      const cd closed = (std::exp(2.0 * kI * double(a) * tau) - 1.0) / (2.0 * kI * double(a));
      const cd got = detail::oscillatory_integral(a, tau);
      // The textbook quotient cancels badly for small aτ; compare relative
      // to the integral's size τ.
      CHECK(std::abs(got - closed) <= 1e-15 + 1e-7 * tau);
    }
  }
  // Small aτ: the integral is τ(1 + iaτ) to first order.
  const cd small = detail::oscillatory_integral(3, 1e-10);
  CHECK(std::abs(small - cd(1e-10, 3e-20)) <= 1e-26);
}

TEST_CASE("phase factorises on k = k1 + k2 + k3") {
  Gen g(200);
  for (int trial = 0; trial < 200; ++trial) {
    const int k1 = g.integer(-30, 30), k2 = g.integer(-30, 30), k3 = g.integer(-30, 30);
    const int k = k1 + k2 + k3;
    CHECK(interaction_phase(k, k1, k2, k3) == 2LL * k * k1 + 2LL * k2 * k3);
  }
}

TEST_CASE("zero input") {
  CHECK(step_direct_oracle(Field(4), 0.3, SchemeParams{0.1, 4, 0.1}) == Field(4));
}

TEST_CASE("constant input") {
  const cd c{0.7, 0.1};
  const double tau = 0.2;
  const Field out = step_direct_oracle(Field::constant(c), 1.3, SchemeParams{tau, 3, tau});
  CHECK(max_abs_diff(out, Field::constant(c - kI * tau * std::norm(c) * c)) <= 1e-16);
}

// Only the triple (k1, k2, k3) = (-1, 1, 1) feeds mode 1. The weight W
// already carries the factor τ from the time integrals, so the coefficient is
// 1 - iW (consistent with 1 - iτ|c|²c for constants as τ -> 0).
TEST_CASE("single mode by hand") {
  const double tau = 0.3;
  for (int n : {3, 4, 9}) {
    const Field out = step_direct_oracle(Field::mode(1, 1.0), 0.0, SchemeParams{tau, n, tau});
    const cd w = (std::exp(-2.0 * kI * tau) - 1.0) / (-2.0 * kI) + (std::exp(2.0 * kI * tau) - 1.0) / (2.0 * kI) - tau;
    CHECK(std::abs(out[1] - (1.0 - kI * w)) <= 1e-15);
    CHECK(max_abs_diff(out, Field::mode(1, out[1], n)) == 0.0);
  }
}

TEST_CASE("cost guard and input checks") {
  const SchemeParams big{0.1, 33, 0.1};
  CHECK_THROWS_AS(step_direct_oracle(Field(33), 0.0, big), CostGuardError);
  CHECK_NOTHROW(step_direct_oracle(Field(33), 0.0, big, OracleOptions{64}));
  const SchemeParams p{0.1, 4, 0.1};
  CHECK_THROWS_AS(step_direct_oracle(Field::mode(5, 1.0), 0.0, p), InvalidInputError);
  CHECK_THROWS_AS(step_direct_oracle(Field(4), -1.0, p), InvalidInputError);
}

TEST_CASE("property: FFT twisted step equals the oracle for N in {4, 8, 16}") {
  Gen g(201);
  for (int n : {4, 8, 16}) {
    for (int trial = 0; trial < 8; ++trial) {
      const Field v = g.field(n);
      const double t_n = g.real(0.0, 2.0);
      const SchemeParams p{g.real(0.01, 0.5), n, 0.0};
      CHECK(relative_sup_difference(step_twisted(v, t_n, p), step_direct_oracle(v, t_n, p)) <= 1e-10);
    }
  }
}

TEST_CASE("oracle_check passes for N = 8 and N = 1") {
  const auto s8 = oracle_check(8, 20, 1);
  CHECK(s8.passed);
  CHECK(s8.trials == 20);
  CHECK(s8.max_relative_diff <= OracleCheckSummary::kTolerance);
  CHECK(oracle_check(1, 20, 2).passed);
}

TEST_CASE("oracle_check flags a corrupted term weight") {
  // Doubles the weight of the plain cubic term.
  const TwistedStepFn corrupted = [](const Field& v, double t_n, const SchemeParams& p) {
    auto terms = twisted_terms(v, t_n, p);
    terms[static_cast<int>(Term::kCubic)] *= cd(2.0);
    return sum_terms(terms);
  };
  const auto summary = oracle_check(8, 20, 1, corrupted);
  CHECK_FALSE(summary.passed);
  CHECK(summary.max_relative_diff > 1e-4);
}

TEST_CASE("oracle_check treats NaN output as failure") {
  const TwistedStepFn broken = [](const Field& v, double, const SchemeParams&) {
    Field out = v;
    out.at(0) = std::nan("");
    return out;
  };
  CHECK_FALSE(oracle_check(2, 3, 1, broken).passed);
}

TEST_CASE("oracle_check rejects N outside the oracle range") {
  CHECK_THROWS_AS(oracle_check(0, 5, 1), ConfigurationError);
  CHECK_THROWS_AS(oracle_check(33, 5, 1), ConfigurationError);
}
