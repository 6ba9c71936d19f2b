// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "grid_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace reglap {

double distance_to_boundary(double x, const Domain& domain) {
  if (!domain.contains_closed(x))
    fail(ErrorKind::input, "distance_to_boundary: point outside the domain");
  return std::min(x - domain.x_lo, domain.x_hi - x);
}

double level_set_h(double x, const BoundaryLayer& layer) {
  const Domain& d = layer.domain;
  if (x <= d.x_lo) return -std::min(d.x_lo - x, layer.delta);
  if (x >= d.x_hi) return -std::min(x - d.x_hi, layer.delta);
  return std::min(distance_to_boundary(x, d), layer.delta);
}

double cutoff_xi(double x, const CutoffXi& cfg) {
  return 1.0 - std::exp(-cfg.rate() * level_set_h(x, cfg.layer));
}

double boundary_bump(double x, double rho, const BoundaryLayer& layer) {
  if (!(rho > 0.0)) fail(ErrorKind::input, "boundary_bump: rho must be > 0");
  const double theta = level_set_h(x, layer) / rho;
  if (theta <= 0.0) return 0.0;
  if (theta >= 1.0) return 1.0;
  return theta * theta * (3.0 - 2.0 * theta);
}

LayerPartition omega_delta_partition(const Grid& grid, double delta) {
  if (!(delta > 0.0) || !(delta < 0.5 * grid.domain.width()))
    fail(ErrorKind::config,
         "omega_delta_partition: delta must lie in (0, width/2)");
  LayerPartition part;
  for (int i = 0; i < grid.n_cells; ++i) {
    if (distance_to_boundary(grid.center(i), grid.domain) < delta)
      part.layer_cells.push_back(i);
    else
      part.interior_cells.push_back(i);
  }
  return part;
}

}  // namespace reglap
