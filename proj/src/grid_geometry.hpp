// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "common.hpp"

namespace reglap {

/// Open interval (x_lo, x_hi); the boundary is the two endpoints.
struct Domain {
  double x_lo;
  double x_hi;

  Domain(double lo, double hi) : x_lo(lo), x_hi(hi) {
    if (!(lo < hi)) fail(ErrorKind::config, "Domain: requires x_lo < x_hi");
  }
  double width() const { return x_hi - x_lo; }
  bool contains_closed(double x) const { return x >= x_lo && x <= x_hi; }
};

/// Uniform cell-centered grid on a Domain.  State vectors live at cell
/// centers; boundary values live at the faces x_lo and x_hi.
struct Grid {
  Domain domain;
  int n_cells;
  double spacing;

  Grid(Domain d, int n) : domain(d), n_cells(n), spacing(d.width() / n) {
    if (n < 1) fail(ErrorKind::config, "Grid: n_cells must be positive");
  }
  double center(int i) const { return domain.x_lo + (i + 0.5) * spacing; }
  double face(int i) const { return domain.x_lo + i * spacing; }
  std::vector<double> centers() const {
    std::vector<double> c(n_cells);
    for (int i = 0; i < n_cells; ++i) c[i] = center(i);
    return c;
  }
};

/// min(x - x_lo, x_hi - x); errors if x is outside the closed domain.
double distance_to_boundary(double x, const Domain& domain);

/// Boundary collar of width delta together with the level-set h:
///   h(x) =  min(d(x), delta)  inside the domain,
///          -min(dist(x,boundary), delta)  outside,
/// Lipschitz with |h'| = 1 on the collar and h = delta in the interior bulk.
struct BoundaryLayer {
  Domain domain;
  double delta;

  BoundaryLayer(Domain d, double dl) : domain(d), delta(dl) {
    if (!(dl > 0.0) || !(dl < 0.5 * d.width()))
      fail(ErrorKind::config,
           "BoundaryLayer: delta must lie in (0, width/2)");
  }
};

double level_set_h(double x, const BoundaryLayer& layer);

/// Exponential boundary cutoff 1 - exp(-((L_f + eps*L)/eps) h(x)).
/// In one dimension the level set is flat on the collar, so L = 0; the
/// field is kept so the formula reads the same in any dimension.
struct CutoffXi {
  double epsilon;
  double l_f;
  double l_laplacian_h;  // sup |Laplacian h| on the collar
  BoundaryLayer layer;

  CutoffXi(double eps, double lf, double l, BoundaryLayer bl)
      : epsilon(eps), l_f(lf), l_laplacian_h(l), layer(std::move(bl)) {
    if (!(eps > 0.0)) fail(ErrorKind::config, "CutoffXi: epsilon must be > 0");
    if (lf < 0.0 || l < 0.0)
      fail(ErrorKind::config, "CutoffXi: constants must be nonnegative");
  }
  double rate() const { return (l_f + epsilon * l_laplacian_h) / epsilon; }
};

double cutoff_xi(double x, const CutoffXi& cfg);

/// beta_rho(x) = gamma(h(x)/rho) with the cubic smoothstep
/// gamma(theta) = 3 theta^2 - 2 theta^3 clamped to [0,1]; equal to 1
/// wherever h(x) >= rho, zero on the boundary.
double boundary_bump(double x, double rho, const BoundaryLayer& layer);

struct LayerPartition {
  std::vector<int> layer_cells;     // cells whose center has d < delta
  std::vector<int> interior_cells;  // the rest
};

LayerPartition omega_delta_partition(const Grid& grid, double delta);

}  // namespace reglap
