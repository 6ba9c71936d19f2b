// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace reglap {

/// Panel edges on [a,b], geometrically refined (ratio 1/2) toward one
/// endpoint.  `levels` extra edges are inserted, the innermost panel
/// touching the refined endpoint has width (b-a)*2^-levels.
std::vector<double> graded_edges(double a, double b, int levels,
                                 bool toward_a);

/// Composite Gauss-Legendre over a list of panel edges.  The accumulator is
/// long double; results of adjacent panels are summed in order.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, int gl_points = 12);

/// Composite Gauss-Legendre with `panels` uniform panels on [a,b].
double integrate_uniform(const std::function<double(double)>& f, double a,
                         double b, int panels, int gl_points = 12);

}  // namespace reglap
