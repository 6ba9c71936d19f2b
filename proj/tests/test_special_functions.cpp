// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "special_functions.hpp"

#include <cmath>
#include <doctest.h>

#include "common.hpp"
#include "oracles.hpp"

using namespace reglap;

TEST_CASE("normalization constant reduces to 1/(2 pi^2) at s = 1/2") {
  // |Gamma(-1/2)| = 2 sqrt(pi), Gamma(1) = 1, so C = 1/(2 pi^2).
  CHECK(normalization_constant(1, 0.5) ==
        doctest::Approx(1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-15));
}

TEST_CASE("normalization constant positive across orders") {
  for (double s : {0.55, 0.75, 0.95}) {
    CHECK(normalization_constant(1, s) > 0.0);
    CHECK(normalization_constant(1, s, Normalization::standard) > 0.0);
  }
}

TEST_CASE("normalization constant agrees with an independent gamma") {
  for (double s : {0.55, 0.75, 0.95}) {
    const double expected = oracle::lanczos_gamma(0.5 + s) /
                            (std::pow(M_PI, 2.0 * s + 0.5) *
                             std::abs(oracle::lanczos_gamma(-s)));
    CHECK(normalization_constant(1, s) ==
          doctest::Approx(expected).epsilon(1e-12));
    const double expected_std = std::pow(4.0, s) *
                                oracle::lanczos_gamma(0.5 + s) /
                                (std::sqrt(M_PI) *
                                 std::abs(oracle::lanczos_gamma(-s)));
    CHECK(normalization_constant(1, s, Normalization::standard) ==
          doctest::Approx(expected_std).epsilon(1e-12));
  }
}

TEST_CASE("normalization constant rejects out-of-range order") {
  CHECK_THROWS_AS(normalization_constant(1, 1.5), Error);
  CHECK_THROWS_AS(normalization_constant(1, 0.0), Error);
  CHECK_THROWS_AS(normalization_constant(0, 0.5), Error);
}

namespace {
double raw_integrand(double t, double sigma) {
  return (std::pow(std::abs(t - 1.0), -sigma) -
          std::pow(std::max(t, 1.0), -sigma)) *
         std::pow(t, sigma - 1.0);
}
}  // namespace

TEST_CASE("boundary-weight integrand is nonnegative with known asymptotics") {
  const double sigma = 0.5;
  for (double t : {1e-6, 0.3, 0.9, 1.1, 3.0, 1e6})
    CHECK(raw_integrand(t, sigma) >= 0.0);
  // ~ sigma t^sigma as t -> 0, ~ sigma t^-2 as t -> inf
  CHECK(raw_integrand(1e-6, sigma) ==
        doctest::Approx(sigma * std::pow(1e-6, sigma)).epsilon(1e-4));
  CHECK(raw_integrand(1e6, sigma) ==
        doctest::Approx(sigma * 1e-12).epsilon(1e-4));
}

TEST_CASE("boundary-weight integral matches the digamma closed form") {
  for (double sigma : {0.1, 0.5, 0.9}) {
    const double closed = oracle::normal_deriv_integral_closed(sigma);
    CHECK(normal_deriv_integral(sigma, 128) ==
          doctest::Approx(closed).epsilon(1e-11));
  }
}

TEST_CASE("boundary-weight constant self-converges under node doubling") {
  for (double sigma : {0.1, 0.5, 0.9}) {
    const double coarse = normal_deriv_integral(sigma, 64);
    const double fine = normal_deriv_integral(sigma, 128);
    CHECK(std::abs(fine - coarse) <= 1e-8);
    CHECK(normal_deriv_constant(sigma) > 0.0);
  }
  CHECK_THROWS_AS(normal_deriv_constant(1.2), Error);
}
