// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "model.hpp"

#include <algorithm>
#include <cmath>

namespace reglap {

namespace {

void require_params(const std::string& name, std::span<const double> params,
                    std::size_t count) {
  if (params.size() != count)
    fail(ErrorKind::config,
         "model '" + name + "': expected " + std::to_string(count) +
             " parameter(s), got " + std::to_string(params.size()));
}

// C^1 ramp from 0 to `height` over [r0, r1] built on the cubic smoothstep.
DegeneracyModel two_plateau(double height, double r0, double r1) {
  if (!(r1 > r0) || !(height >= 0.0) || r0 < 0.0)
    fail(ErrorKind::config, "two_plateau: requires 0 <= r0 < r1, height >= 0");
  auto a = [=](double u) {
    const double t = std::clamp((u - r0) / (r1 - r0), 0.0, 1.0);
    return height * t * t * (3.0 - 2.0 * t);
  };
  auto ap = [=](double u) {
    const double t = (u - r0) / (r1 - r0);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return height * 6.0 * t * (1.0 - t) / (r1 - r0);
  };
  return {a, ap, "two_plateau"};
}

}  // namespace

FluxModel make_flux(const std::string& name, std::span<const double> params) {
  if (name == "burgers") {
    require_params(name, params, 0);
    return {[](double u) { return 0.5 * u * u; }, [](double u) { return u; },
            "burgers"};
  }
  if (name == "advection") {
    require_params(name, params, 1);
    const double c = params[0];
    return {[c](double u) { return c * u; }, [c](double) { return c; },
            "advection"};
  }
  if (name == "zero") {
    require_params(name, params, 0);
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, "zero"};
  }
  fail(ErrorKind::config, "unknown flux model '" + name + "'");
}

DegeneracyModel make_degeneracy(const std::string& name,
                                std::span<const double> params) {
  if (name == "degenerate") {
    require_params(name, params, 1);
    const double uc = params[0];
    if (uc < 0.0)
      fail(ErrorKind::config, "degenerate: threshold must be >= 0 so A(0)=0");
    return {[uc](double u) {
              const double p = std::max(u - uc, 0.0);
              return p * p;
            },
            [uc](double u) { return 2.0 * std::max(u - uc, 0.0); },
            "degenerate"};
  }
  if (name == "porous") {
    require_params(name, params, 1);
    const double m = params[0];
    if (!(m >= 1.0)) fail(ErrorKind::config, "porous: exponent must be >= 1");
    return {[m](double u) { return u * std::pow(std::abs(u), m - 1.0); },
            [m](double u) { return m * std::pow(std::abs(u), m - 1.0); },
            "porous"};
  }
  if (name == "two_plateau") {
    require_params(name, params, 3);
    return two_plateau(params[0], params[1], params[2]);
  }
  if (name == "linear") {
    require_params(name, params, 1);
    const double c = params[0];
    if (c < 0.0) fail(ErrorKind::config, "linear: slope must be >= 0");
    return {[c](double u) { return c * u; }, [c](double) { return c; },
            "linear"};
  }
  if (name == "none") {
    require_params(name, params, 0);
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, "none"};
  }
  fail(ErrorKind::config, "unknown degeneracy model '" + name + "'");
}

double sampled_sup(const std::function<double(double)>& fn, double lo,
                   double hi, int samples) {
  if (samples < 2 || lo == hi) return std::abs(fn(lo));
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double u = lo + (hi - lo) * i / (samples - 1);
    sup = std::max(sup, std::abs(fn(u)));
  }
  return sup;
}

DataBounds data_bounds(std::span<const double> u0_samples,
                       std::span<const double> ub_samples,
                       const FluxModel& flux, const DegeneracyModel& deg) {
  if (u0_samples.empty() && ub_samples.empty())
    fail(ErrorKind::input, "data_bounds: no data samples");
  double a = std::numeric_limits<double>::infinity();
  double b = -a;
  for (double v : u0_samples) {
    a = std::min(a, v);
    b = std::max(b, v);
  }
  for (double v : ub_samples) {
    a = std::min(a, v);
    b = std::max(b, v);
  }
  return {a, b, sampled_sup(flux.f_prime, a, b),
          sampled_sup(deg.a_prime, a, b)};
}

DegeneracyModel regularized_degeneracy(const DegeneracyModel& deg,
                                       double eps) {
  if (!(eps > 0.0))
    fail(ErrorKind::config, "regularized_degeneracy: eps must be > 0");
  auto base_a = deg.a;
  auto base_ap = deg.a_prime;
  return {[base_a, eps](double u) { return base_a(u) + eps * u; },
          [base_ap, eps](double u) { return base_ap(u) + eps; },
          deg.name + "+eps"};
}

double sgn_pm(double v, SemiSign sign) {
  if (sign == SemiSign::plus) return v > 0.0 ? 1.0 : 0.0;
  return v < 0.0 ? -1.0 : 0.0;
}

double semi_entropy(double u, double k, SemiSign sign) {
  const double d = (sign == SemiSign::plus) ? u - k : k - u;
  return std::max(d, 0.0);
}

double semi_entropy_flux(const FluxModel& flux, double u, double k,
                         SemiSign sign) {
  return sgn_pm(u - k, sign) * (flux.f(u) - flux.f(k));
}

std::pair<double, double> semi_entropy_pair(double k, SemiSign sign,
                                            const FluxModel& flux, double u) {
  return {semi_entropy(u, k, sign), semi_entropy_flux(flux, u, k, sign)};
}

double secant_slope(const DegeneracyModel& deg, double z1, double z2) {
  const double scale = 1.0 + std::max(std::abs(z1), std::abs(z2));
  if (std::abs(z1 - z2) <= 1e-8 * scale) {
    if (z1 == z2) return deg.a_prime(z1);
    return 0.5 * (deg.a_prime(z1) + deg.a_prime(z2));
  }
  return std::max((deg.a(z1) - deg.a(z2)) / (z1 - z2), 0.0);
}

SgnLemmaResult sgn_lemma_remainder(const KernelWeights& weights,
                                   const DegeneracyModel& deg,
                                   std::span<const double> u, double k,
                                   SemiSign sign, int i) {
  const int n = weights.grid.n_cells;
  const double ak = deg.a(k);
  std::vector<double> au(n), eta(n);
  for (int j = 0; j < n; ++j) {
    au[j] = deg.a(u[j]);
    eta[j] = sgn_pm(u[j] - k, sign) * (au[j] - ak);
  }
  const double sgn_i = sgn_pm(u[i] - k, sign);

  long double remainder = 0.0L;
  double min_summand = 0.0;
  bool first = true;
  for (int j = 0; j < n; ++j) {
    const double summand =
        weights.w(i, j) * (ak - au[j]) * (sgn_i - sgn_pm(u[j] - k, sign));
    remainder += static_cast<long double>(summand);
    if (weights.w(i, j) != 0.0) {
      if (first || summand < min_summand) min_summand = summand;
      first = false;
    }
  }
  const double r_k = static_cast<double>(weights.c_ns * remainder);

  const double lhs = apply_row(weights, eta, i);
  const double rhs = sgn_i * apply_row(weights, au, i) - r_k;
  return {r_k, min_summand, std::abs(lhs - rhs)};
}

}  // namespace reglap
