// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "fractional_operator.hpp"

#include <cmath>

#include "quadrature.hpp"

namespace reglap {

KernelWeights assemble_weights(const Grid& grid, const FractionalOrder& order,
                               Normalization form) {
  if (grid.n_cells < 4)
    fail(ErrorKind::config, "assemble_weights: need at least 4 cells");
  const int n = grid.n_cells;
  const double dx = grid.spacing;
  const double two_s = 2.0 * order.s;

  // w depends only on the cell offset k = |i-j|:
  //   w(k) = ((k-1/2)^-2s - (k+1/2)^-2s) / (2s) * dx^-2s
  std::vector<double> by_offset(n, 0.0);
  const double scale = std::pow(dx, -two_s) / two_s;
  for (int k = 1; k < n; ++k) {
    by_offset[k] =
        scale * (std::pow(k - 0.5, -two_s) - std::pow(k + 0.5, -two_s));
  }

  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      w(i, j) = by_offset[j - i];
      w(j, i) = by_offset[j - i];
    }
  }
  return KernelWeights{grid, order, normalization_constant(1, order.s, form),
                       std::move(w)};
}

std::vector<double> apply_regional_laplacian(const KernelWeights& weights,
                                             std::span<const double> u) {
  const int n = weights.grid.n_cells;
  if (static_cast<int>(u.size()) != n)
    fail(ErrorKind::input, "apply_regional_laplacian: field length mismatch");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (int j = 0; j < n; ++j) {
      acc += static_cast<long double>(weights.w(i, j)) *
             static_cast<long double>(u[i] - u[j]);
    }
    out[i] = static_cast<double>(weights.c_ns * acc);
  }
  return out;
}

double apply_row(const KernelWeights& weights, std::span<const double> u,
                 int i) {
  const int n = weights.grid.n_cells;
  long double acc = 0.0L;
  for (int j = 0; j < n; ++j) {
    acc += static_cast<long double>(weights.w(i, j)) *
           static_cast<long double>(u[i] - u[j]);
  }
  return static_cast<double>(weights.c_ns * acc);
}

double gagliardo_form(const KernelWeights& weights, std::span<const double> u,
                      std::span<const double> v) {
  const int n = weights.grid.n_cells;
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    fail(ErrorKind::input, "gagliardo_form: field length mismatch");
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc += static_cast<long double>(weights.w(i, j)) *
             static_cast<long double>(u[i] - u[j]) *
             static_cast<long double>(v[i] - v[j]);
    }
  }
  return static_cast<double>(acc * weights.grid.spacing);
}

double inner_product(const Grid& grid, std::span<const double> u,
                     std::span<const double> v) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += static_cast<long double>(u[i]) * static_cast<long double>(v[i]);
  return static_cast<double>(acc * grid.spacing);
}

double truncated_laplacian(const Grid& grid, const FractionalOrder& order,
                           const std::function<double(double)>& u, double x,
                           double trunc, Normalization form) {
  const Domain& d = grid.domain;
  const double two_s = 2.0 * order.s;
  const double ux = u(x);
  const auto integrand = [&](double y) {
    return (ux - u(y)) * std::pow(std::abs(x - y), -(1.0 + two_s));
  };
  long double acc = 0.0L;
  if (x - trunc > d.x_lo) {
    acc += integrate_panels(integrand,
                            graded_edges(d.x_lo, x - trunc, 40, false));
  }
  if (x + trunc < d.x_hi) {
    acc += integrate_panels(integrand,
                            graded_edges(x + trunc, d.x_hi, 40, true));
  }
  return static_cast<double>(normalization_constant(1, order.s, form) * acc);
}

double product_rule_residual(const KernelWeights& weights,
                             std::span<const double> u,
                             std::span<const double> v, int i) {
  const int n = weights.grid.n_cells;
  std::vector<double> uv(n);
  for (int j = 0; j < n; ++j) uv[j] = u[j] * v[j];
  const double l_uv = apply_row(weights, uv, i);
  const double l_u = apply_row(weights, u, i);
  const double l_v = apply_row(weights, v, i);
  long double cross = 0.0L;
  for (int j = 0; j < n; ++j) {
    cross += static_cast<long double>(weights.w(i, j)) *
             static_cast<long double>(u[i] - u[j]) *
             static_cast<long double>(v[i] - v[j]);
  }
  const long double res = static_cast<long double>(l_uv) -
                          static_cast<long double>(v[i] * l_u) -
                          static_cast<long double>(u[i] * l_v) +
                          static_cast<long double>(weights.c_ns) * cross;
  return std::abs(static_cast<double>(res));
}

}  // namespace reglap
