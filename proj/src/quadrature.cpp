// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "quadrature.hpp"

#include <array>
#include <cmath>

#include "common.hpp"

namespace reglap {

namespace {

// Nodes/weights on [-1,1].
constexpr std::array<double, 6> kGl12Nodes = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr std::array<double, 6> kGl12Weights = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

constexpr std::array<double, 3> kGl6Nodes = {
    0.2386191860831969, 0.6612093864662645, 0.9324695142031521};
constexpr std::array<double, 3> kGl6Weights = {
    0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

constexpr std::array<double, 10> kGl20Nodes = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154196,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
constexpr std::array<double, 10> kGl20Weights = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183821,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

template <std::size_t H>
long double panel_sum(const std::function<double(double)>& f, double a,
                      double b, const std::array<double, H>& nodes,
                      const std::array<double, H>& weights) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  long double acc = 0.0L;
  for (std::size_t j = 0; j < H; ++j) {
    acc += static_cast<long double>(weights[j]) *
           (static_cast<long double>(f(mid - half * nodes[j])) +
            static_cast<long double>(f(mid + half * nodes[j])));
  }
  return acc * half;
}

long double panel(const std::function<double(double)>& f, double a, double b,
                  int gl_points) {
  switch (gl_points) {
    case 6:
      return panel_sum(f, a, b, kGl6Nodes, kGl6Weights);
    case 20:
      return panel_sum(f, a, b, kGl20Nodes, kGl20Weights);
    default:
      return panel_sum(f, a, b, kGl12Nodes, kGl12Weights);
  }
}

}  // namespace

std::vector<double> graded_edges(double a, double b, int levels,
                                 bool toward_a) {
  const double length = b - a;
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(levels) + 2);
  if (toward_a) {
    edges.push_back(a);
    for (int k = levels; k >= 0; --k) {
      const double e = a + length * std::pow(0.5, k);
      if (e > edges.back()) edges.push_back(e);
    }
  } else {
    edges.push_back(b);
    for (int k = levels; k >= 0; --k) {
      const double e = b - length * std::pow(0.5, k);
      if (e < edges.back()) edges.push_back(e);
    }
    std::reverse(edges.begin(), edges.end());
  }
  return edges;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, int gl_points) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    acc += panel(f, edges[i], edges[i + 1], gl_points);
  }
  return static_cast<double>(acc);
}

double integrate_uniform(const std::function<double(double)>& f, double a,
                         double b, int panels, int gl_points) {
  long double acc = 0.0L;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    acc += panel(f, a + i * h, a + (i + 1) * h, gl_points);
  }
  return static_cast<double>(acc);
}

}  // namespace reglap
