// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "grid_geometry.hpp"
#include "special_functions.hpp"

namespace reglap {

/// Fractional order s in (0,1); sigma = 2s-1 drives the boundary-trace
/// machinery and is meaningful for s > 1/2.
struct FractionalOrder {
  double s;

  explicit FractionalOrder(double order) : s(order) {
    if (!(order > 0.0 && order < 1.0))
      fail(ErrorKind::config, "FractionalOrder: s must lie in (0,1)");
  }
  double sigma() const { return 2.0 * s - 1.0; }
  bool has_boundary_trace() const { return s > 0.5; }
};

/// Dense symmetric kernel weights for the discrete regional fractional
/// Laplacian.  w(i,j) is the exact integral of |x_i - y|^-(1+2s) over cell
/// j (closed-form antiderivative); w(i,i) = 0 realizes the symmetric
/// principal-value exclusion of the self cell.
struct KernelWeights {
  Grid grid;
  FractionalOrder order;
  double c_ns;
  Eigen::MatrixXd w;

  const Eigen::MatrixXd& matrix() const { return w; }
};

KernelWeights assemble_weights(const Grid& grid, const FractionalOrder& order,
                               Normalization form = Normalization::paper);

/// out_i = c_ns * sum_j w_ij (u_i - u_j).  Computed in difference form so
/// constants are annihilated bit-exactly.
std::vector<double> apply_regional_laplacian(const KernelWeights& weights,
                                             std::span<const double> u);

/// Discrete Gagliardo semi-inner product
///   [u,v] = sum_{i != j} w_ij (u_i - u_j)(v_i - v_j) * dx,
/// scaled so that <L u, v> = (c_ns/2) [u,v] holds exactly with the
/// dx-weighted inner product below.
double gagliardo_form(const KernelWeights& weights, std::span<const double> u,
                      std::span<const double> v);

/// dx-weighted discrete L2 inner product on the grid.
double inner_product(const Grid& grid, std::span<const double> u,
                     std::span<const double> v);

/// Truncated operator c_ns * int_{Omega \ B_trunc(x)} (u(x)-u(y)) / |x-y|^(1+2s) dy
/// for a continuum function u, by adaptive quadrature.
double truncated_laplacian(const Grid& grid, const FractionalOrder& order,
                           const std::function<double(double)>& u, double x,
                           double trunc,
                           Normalization form = Normalization::paper);

/// |L(uv)_i - v_i L(u)_i - u_i L(v)_i + c_ns sum_j w_ij (u_i-u_j)(v_i-v_j)|.
/// The discrete product formula makes this zero up to roundoff.
double product_rule_residual(const KernelWeights& weights,
                             std::span<const double> u,
                             std::span<const double> v, int i);

/// Row of the operator applied at a single cell (same formula as
/// apply_regional_laplacian restricted to row i).
double apply_row(const KernelWeights& weights, std::span<const double> u,
                 int i);

}  // namespace reglap
