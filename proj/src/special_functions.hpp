// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace reglap {

/// Which normalization of the singular-integral constant to use.
/// `paper` is Gamma(n/2+s) / (pi^(2s+n/2) |Gamma(-s)|); `standard` is the
/// common 4^s Gamma(n/2+s) / (pi^(n/2) |Gamma(-s)|).  Both are positive;
/// Gamma(-s) itself is negative on (0,1), so its absolute value is taken.
enum class Normalization { paper, standard };

/// C_{n,s} for the regional fractional Laplacian kernel.
/// Requires n >= 1 and 0 < s < 1.
double normalization_constant(int n, double s,
                              Normalization form = Normalization::paper);

/// The weight integral of the fractional Green formula,
///   N_sigma = C_{1,(sigma+1)/2} / ((sigma+1) sigma) *
///             int_0^inf (|t-1|^-sigma - max(t,1)^-sigma) t^(sigma-1) dt,
/// evaluated by composite quadrature on a desingularized splitting at
/// t in {0, 1, tail}.  `panels` controls resolution per piece; the result
/// is accepted only if doubling the panel count moves it by < conv_tol.
double normal_deriv_constant(double sigma, int panels = 64,
                             double conv_tol = 1e-10,
                             Normalization form = Normalization::paper);

/// The bare integral above (no C/((sigma+1)sigma) prefactor), fixed panel
/// count, no convergence check.  Exposed for convergence studies.
double normal_deriv_integral(double sigma, int panels);

}  // namespace reglap
