// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "special_functions.hpp"

#include <cmath>
#include <sstream>

#include "common.hpp"
#include "quadrature.hpp"

namespace reglap {

double normalization_constant(int n, double s, Normalization form) {
  if (n < 1) fail(ErrorKind::input, "normalization_constant: n must be >= 1");
  if (!(s > 0.0 && s < 1.0))
    fail(ErrorKind::input, "normalization_constant: s must lie in (0,1)");
  const double num = std::tgamma(0.5 * n + s);
  const double den_gamma = std::abs(std::tgamma(-s));
  switch (form) {
    case Normalization::standard:
      return std::pow(4.0, s) * num / (std::pow(M_PI, 0.5 * n) * den_gamma);
    case Normalization::paper:
    default:
      return num / (std::pow(M_PI, 2.0 * s + 0.5 * n) * den_gamma);
  }
}

// The integrand (|t-1|^-sigma - max(t,1)^-sigma) t^(sigma-1) is integrable
// but endpoint-singular at t in {0, 1} and has a slow tail.  Each piece is
// transformed to a smooth integrand on a finite interval:
//   [0,1/2]   via t = q^(1/sigma)
//   [1/2,1]   singular part via 1-t = w^(1/(1-sigma)); the -t^(sigma-1)
//             part in closed form
//   [1,inf)   via t -> 1/t, giving int_0^1 ((1-t)^-sigma - 1)/t dt, split
//             the same way at 1/2.
double normal_deriv_integral(double sigma, int panels) {
  const double inv_s = 1.0 / sigma;
  const double inv_one_minus = 1.0 / (1.0 - sigma);

  // A: (1/sigma) int_0^{(1/2)^sigma} ((1 - q^(1/sigma))^-sigma - 1) dq
  const double a_hi = std::pow(0.5, sigma);
  const double piece_a =
      inv_s * integrate_uniform(
                  [&](double q) {
                    const double t = std::pow(q, inv_s);
                    return std::pow(1.0 - t, -sigma) - 1.0;
                  },
                  0.0, a_hi, panels);

  // B: (1/(1-sigma)) int_0^{(1/2)^(1-sigma)} (1 - w^(1/(1-sigma)))^(sigma-1) dw
  //    - (1 - (1/2)^sigma)/sigma
  const double b_hi = std::pow(0.5, 1.0 - sigma);
  const double piece_b =
      inv_one_minus * integrate_uniform(
                          [&](double w) {
                            const double t = 1.0 - std::pow(w, inv_one_minus);
                            return std::pow(t, sigma - 1.0);
                          },
                          0.0, b_hi, panels) -
      (1.0 - std::pow(0.5, sigma)) / sigma;

  // C: int_0^{1/2} ((1-t)^-sigma - 1)/t dt  (removable limit sigma at 0)
  const double piece_c = integrate_uniform(
      [&](double t) {
        if (t < 1e-9) return sigma * (1.0 + 0.5 * (sigma + 1.0) * t);
        return (std::pow(1.0 - t, -sigma) - 1.0) / t;
      },
      0.0, 0.5, panels);

  // D: (1/(1-sigma)) int_0^{(1/2)^(1-sigma)} dw / (1 - w^(1/(1-sigma))) - ln 2
  const double piece_d =
      inv_one_minus * integrate_uniform(
                          [&](double w) {
                            return 1.0 / (1.0 - std::pow(w, inv_one_minus));
                          },
                          0.0, b_hi, panels) -
      std::log(2.0);

  return piece_a + piece_b + piece_c + piece_d;
}

double normal_deriv_constant(double sigma, int panels, double conv_tol,
                             Normalization form) {
  if (!(sigma > 0.0 && sigma < 1.0))
    fail(ErrorKind::input, "normal_deriv_constant: sigma must lie in (0,1)");
  const double coarse = normal_deriv_integral(sigma, panels);
  const double fine = normal_deriv_integral(sigma, 2 * panels);
  if (std::abs(fine - coarse) > conv_tol * std::max(1.0, std::abs(fine))) {
    std::ostringstream msg;
    msg << "normal_deriv_constant: quadrature did not converge (sigma="
        << sigma << ", panels=" << panels << " -> " << coarse << ", panels="
        << 2 * panels << " -> " << fine << ")";
    fail(ErrorKind::numerical, msg.str());
  }
  const double s = 0.5 * (sigma + 1.0);
  return normalization_constant(1, s, form) / ((sigma + 1.0) * sigma) * fine;
}

}  // namespace reglap
