// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fractional_operator.hpp"
#include "grid_geometry.hpp"

namespace reglap {

/// A scalar function with two derivatives, smooth on the closed domain.
struct SmoothFn {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;

  static SmoothFn constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; },
            [](double) { return 0.0; }};
  }
};

/// u(x) = f(x) h(x) + g(x) with h equal to d(x)^sigma near each endpoint
/// (sigma = 2s-1) and blended smoothly across the middle third, so u is
/// C^2 inside and continuous up to the boundary.  All boundary-singular
/// evaluations are parametrized by the exact distances to the endpoints;
/// only h needs that care, f and g are smooth in x.
class GreenFormulaTestFn {
 public:
  GreenFormulaTestFn(SmoothFn f, SmoothFn g, FractionalOrder order,
                     Domain domain);

  long double value(long double dlo, long double dhi) const;
  long double deriv(long double dlo, long double dhi) const;
  long double deriv2(long double dlo, long double dhi) const;

  double value_at(double x) const;
  double boundary_value(bool left) const;  // u on the boundary ( = g there)
  double f_at_boundary(bool left) const;

  const FractionalOrder& order() const { return order_; }
  const Domain& domain() const { return domain_; }

 private:
  SmoothFn f_, g_;
  FractionalOrder order_;
  Domain domain_;
};

/// Pointwise (-Delta)^s_Omega u at the interior point given by distances
/// (dlo, dhi).  Integrated-by-parts principal-value form, desingularized by
/// power substitutions; accumulation in long double.  `bulk` caps the panel
/// width of each inner quadrature at range/bulk.
double regional_laplacian_pointwise(const GreenFormulaTestFn& u, double c_ns,
                                    long double dlo, long double dhi,
                                    int bulk = 16);

/// sigma * (u(r) - u(r - tau nu)) / tau^sigma extrapolated over the given
/// decreasing tau sequence (ratio 2) via a Richardson ladder on the
/// exponents {2-2s, 1, 3-2s, 2, ...}.  Requires s > 1/2.
double fractional_normal_derivative(const GreenFormulaTestFn& u,
                                    bool left_endpoint,
                                    std::span<const double> tau_seq);

/// Default tau sequence delta * 2^-k, k Lin 1..12.
std::vector<double> default_tau_sequence(double delta);

struct GreenTerms {
  double volume;     // int v (-Delta)^s u
  double gagliardo;  // (c_ns/2) [u, v]
  double boundary;   // N_sigma sum_r v(r) d^sigma_nu u(r)
  double residual;   // |volume - gagliardo + boundary|
};

/// Evaluates the three terms of the integration-by-parts identity on
/// quadrature meshes derived from the grid (base cells plus 20 levels of
/// geometric grading toward each endpoint) and returns the residual.
GreenTerms green_formula_residual(const GreenFormulaTestFn& u,
                                  const SmoothFn& v, const Grid& grid,
                                  Normalization form = Normalization::paper);

struct GreenStudyRow {
  int n_cells;
  double residual;
};

struct GreenStudy {
  std::vector<GreenStudyRow> rows;
  double fitted_rate;  // least-squares slope of log2(residual) vs log2(N)
};

GreenStudy green_refinement_study(const GreenFormulaTestFn& u,
                                  const SmoothFn& v, const Domain& domain,
                                  std::span<const int> n_values,
                                  Normalization form = Normalization::paper);

}  // namespace reglap
