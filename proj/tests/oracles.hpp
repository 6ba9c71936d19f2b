// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-side reference implementations, independent of the library's own
// numerical paths: a Lanczos gamma, a digamma, and an adaptive
// Gauss-Kronrod integrator.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// Lanczos approximation (g = 7, 9 coefficients), double accuracy ~1e-14.
inline double lanczos_gamma(double x) {
  static const double coef[9] = {0.99999999999980993,
                                 676.5203681218851,
                                 -1259.1392167224028,
                                 771.32342877765313,
                                 -176.61502916214059,
                                 12.507343278686905,
                                 -0.13857109526572012,
                                 9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection
    return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double a = coef[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// Digamma via recurrence up to x >= 10 plus the asymptotic series.
inline double digamma(double x) {
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                            inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return result;
}

// Closed form of the boundary-weight integral:
//   pi/sin(pi sigma) - 1/sigma - digamma(1-sigma) - euler_gamma.
inline double normal_deriv_integral_closed(double sigma) {
  constexpr double euler = 0.57721566490153286;
  return M_PI / std::sin(M_PI * sigma) - 1.0 / sigma - digamma(1.0 - sigma) -
         euler;
}

// Adaptive Gauss-Kronrod 7-15 on [a,b].
namespace detail {
constexpr double kKronrodNodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126};
constexpr double kKronrodWeights[8] = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
    0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
    0.0630920926299786, 0.0229353220105292};
constexpr double kGaussWeights[4] = {0.4179591836734694, 0.3818300505051189,
                                     0.2797053914892767, 0.1294849661688697};

struct GK {
  double integral;
  double error;
};

inline GK gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kron = kKronrodWeights[0] * f0;
  double gauss = kGaussWeights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double fp = f(mid + half * kKronrodNodes[i]);
    const double fm = f(mid - half * kKronrodNodes[i]);
    kron += kKronrodWeights[i] * (fp + fm);
    if (i % 2 == 0) gauss += kGaussWeights[i / 2] * (fp + fm);
  }
  return {kron * half, std::abs(kron - gauss) * half};
}

inline double gk_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int depth) {
  const GK whole = gk15(f, a, b);
  if (whole.error <= tol || depth <= 0) return whole.integral;
  const double mid = 0.5 * (a + b);
  return gk_adaptive(f, a, mid, tol / 2, depth - 1) +
         gk_adaptive(f, mid, b, tol / 2, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13, int depth = 40) {
  if (a == b) return 0.0;
  return detail::gk_adaptive(f, a, b, tol, depth);
}

}  // namespace oracle
