// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fractional_operator.hpp"

namespace reglap {

/// Scalar flux f with derivative; f' locally Lipschitz.
struct FluxModel {
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::string name;
};

/// Nondecreasing degeneracy A with A(0) = 0 and A' >= 0.
struct DegeneracyModel {
  std::function<double(double)> a;
  std::function<double(double)> a_prime;
  std::string name;
};

/// Built-in model library.  Flux names: "burgers", "advection" (speed).
/// Degeneracy names: "degenerate" (threshold), "porous" (exponent m),
/// "two_plateau" (height, ramp start, ramp end), "linear" (slope), "none".
FluxModel make_flux(const std::string& name, std::span<const double> params);
DegeneracyModel make_degeneracy(const std::string& name,
                                std::span<const double> params);

/// Essential data bounds a <= b and sampled Lipschitz constants of f' and
/// A' over [a,b] (1000-point sampling including the endpoints).
struct DataBounds {
  double a;
  double b;
  double l_f;
  double l_a;
};

DataBounds data_bounds(std::span<const double> u0_samples,
                       std::span<const double> ub_samples,
                       const FluxModel& flux, const DegeneracyModel& deg);

/// max over a dense sampling of [lo,hi] of |fn|.
double sampled_sup(const std::function<double(double)>& fn, double lo,
                   double hi, int samples = 1000);

/// A_eps(u) = A(u) + eps*u; strictly parabolic with A_eps' >= eps.
DegeneracyModel regularized_degeneracy(const DegeneracyModel& deg, double eps);

enum class SemiSign { plus, minus };

/// Closed sign conventions: sgn+(v)=1 for v>0 else 0; sgn-(v)=-1 for v<0
/// else 0.  Floating-point equality is literal.
double sgn_pm(double v, SemiSign sign);

/// Kruzhkov semi-entropy eta_k^pm(u) = max(+-(u-k), 0).
double semi_entropy(double u, double k, SemiSign sign);

/// Matched semi-entropy flux q_k^pm(u) = sgn^pm(u-k) (f(u) - f(k)).
double semi_entropy_flux(const FluxModel& flux, double u, double k,
                         SemiSign sign);

/// (eta, q) pair.
std::pair<double, double> semi_entropy_pair(double k, SemiSign sign,
                                            const FluxModel& flux, double u);

/// Secant slope (A(z1)-A(z2))/(z1-z2), with the derivative value on (or
/// numerically near) the diagonal.  Nonnegative for monotone A.
double secant_slope(const DegeneracyModel& deg, double z1, double z2);

struct SgnLemmaResult {
  double remainder;          // R_k(x_i), nonnegative termwise
  double min_summand;        // smallest single summand (>= 0 expected)
  double identity_residual;  // |L|A(u)-A(k)|^pm - sgn^pm(u-k) L A(u) + R_k|
};

/// Discrete sign-decomposition at cell i:
///   R_k(x_i) = c_ns sum_j w_ij (A(k) - A(u_j)) (sgn_i - sgn_j),
/// which is nonnegative termwise for monotone A and satisfies exactly
///   L |A(u)-A(k)|^pm = sgn^pm(u-k) L A(u) - R_k.
SgnLemmaResult sgn_lemma_remainder(const KernelWeights& weights,
                                   const DegeneracyModel& deg,
                                   std::span<const double> u, double k,
                                   SemiSign sign, int i);

}  // namespace reglap
