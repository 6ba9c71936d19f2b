// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "green_formula.hpp"

#include <algorithm>
#include <cmath>

#include "special_functions.hpp"

namespace reglap {

namespace {

using ::powl;

constexpr int kGradeLevels = 48;   // grading depth for the kernel-side piece
constexpr int kSmoothLevels = 24;  // grading depth after desingularization
constexpr int kOuterLevels = 20;   // grading of the outer volume meshes

// 12-point Gauss-Legendre on [-1,1], long double accumulation.
constexpr long double kNodes[6] = {
    0.1252334085114689L, 0.3678314989981802L, 0.5873179542866175L,
    0.7699026741943047L, 0.9041172563704749L, 0.9815606342467192L};
constexpr long double kWts[6] = {
    0.2491470458134028L, 0.2334925365383548L, 0.2031674267230659L,
    0.1600783285433462L, 0.1069393259953184L, 0.0471753363865118L};

template <class F>
long double gl_panel(const F& f, long double a, long double b) {
  const long double mid = 0.5L * (a + b), half = 0.5L * (b - a);
  long double acc = 0.0L;
  for (int j = 0; j < 6; ++j) {
    acc += kWts[j] * (f(mid - half * kNodes[j]) + f(mid + half * kNodes[j]));
  }
  return acc * half;
}

// Panels on [a,b] geometrically graded toward a (ratio 1/2), with panels in
// the bulk split so none is wider than (b-a)/bulk.  Degenerate panels caused
// by running out of bits are dropped.
template <class F>
long double graded_toward_a(const F& f, long double a, long double b,
                            int levels, int bulk = 16) {
  if (!(b > a)) return 0.0L;
  const long double len = b - a;
  const long double cap = len / bulk;
  long double acc = 0.0L;
  long double prev = a;
  for (int k = levels; k >= 0; --k) {
    const long double edge = a + len * powl(0.5L, k);
    if (edge > prev) {
      const long double w = edge - prev;
      const int parts = w > cap ? static_cast<int>(ceill(w / cap)) : 1;
      for (int j = 0; j < parts; ++j) {
        acc += gl_panel(f, prev + w * j / parts, prev + w * (j + 1) / parts);
      }
      prev = edge;
    }
  }
  return acc;
}

// C-infinity smoothstep exp(-1/t)/(exp(-1/t)+exp(-1/(1-t))) with its first
// two derivatives; infinitely flat at both ends, so the blended h feeds the
// Gauss panels analytic integrands.  Tails below the long-double epsilon of
// the surrounding arithmetic are clamped.
struct Step {
  long double v, d1, d2;
};

Step smoothstep_inf(long double t) {
  if (t <= 0.015L) return {0.0L, 0.0L, 0.0L};
  if (t >= 0.985L) return {1.0L, 0.0L, 0.0L};
  const long double s = 1.0L - t;
  const long double w = expl(-1.0L / t), v = expl(-1.0L / s);
  const long double d = w + v;
  const long double it2 = 1.0L / (t * t), is2 = 1.0L / (s * s);
  const long double g = it2 + is2;
  const long double prod = w * v;
  const long double val = w / d;
  const long double d1 = prod * g / (d * d);
  const long double dp = prod * (it2 - is2);
  const long double dg = -2.0L / (t * t * t) + 2.0L / (s * s * s);
  const long double dd = w * it2 - v * is2;
  const long double d2 =
      (dp * g + prod * dg) / (d * d) - 2.0L * prod * g * dd / (d * d * d);
  return {val, d1, d2};
}

}  // namespace

GreenFormulaTestFn::GreenFormulaTestFn(SmoothFn f, SmoothFn g,
                                       FractionalOrder order, Domain domain)
    : f_(std::move(f)), g_(std::move(g)), order_(order), domain_(domain) {
  if (!order_.has_boundary_trace())
    fail(ErrorKind::input, "GreenFormulaTestFn: requires s > 1/2");
}

// h and derivatives in distance coordinates; blend weight zeta depends on
// the normalized position p = dlo / width.
namespace {
struct HVal {
  long double h, h1, h2;
};

HVal h_eval(long double dlo, long double dhi, long double width,
            long double sigma) {
  const long double p = dlo / width;
  const Step step = smoothstep_inf(3.0L * p - 1.0L);
  const long double zeta = 1.0L - step.v;
  const long double zeta1 = -3.0L / width * step.d1;
  const long double zeta2 = -9.0L / (width * width) * step.d2;
  const long double plo = powl(dlo, sigma), phi = powl(dhi, sigma);
  const long double plo1 = sigma * powl(dlo, sigma - 1.0L);
  const long double phi1 = sigma * powl(dhi, sigma - 1.0L);
  const long double plo2 = sigma * (sigma - 1.0L) * powl(dlo, sigma - 2.0L);
  const long double phi2 = sigma * (sigma - 1.0L) * powl(dhi, sigma - 2.0L);
  HVal out;
  out.h = zeta * plo + (1.0L - zeta) * phi;
  out.h1 = zeta1 * (plo - phi) + zeta * plo1 - (1.0L - zeta) * phi1;
  out.h2 = zeta2 * (plo - phi) + 2.0L * zeta1 * (plo1 + phi1) + zeta * plo2 +
           (1.0L - zeta) * phi2;
  return out;
}
}  // namespace

long double GreenFormulaTestFn::value(long double dlo, long double dhi) const {
  const long double w = domain_.width();
  const double x = (dlo <= dhi) ? domain_.x_lo + static_cast<double>(dlo)
                                : domain_.x_hi - static_cast<double>(dhi);
  const HVal h = h_eval(dlo, dhi, w, order_.sigma());
  return static_cast<long double>(f_.value(x)) * h.h +
         static_cast<long double>(g_.value(x));
}

long double GreenFormulaTestFn::deriv(long double dlo, long double dhi) const {
  const long double w = domain_.width();
  const double x = (dlo <= dhi) ? domain_.x_lo + static_cast<double>(dlo)
                                : domain_.x_hi - static_cast<double>(dhi);
  const HVal h = h_eval(dlo, dhi, w, order_.sigma());
  return static_cast<long double>(f_.d1(x)) * h.h +
         static_cast<long double>(f_.value(x)) * h.h1 +
         static_cast<long double>(g_.d1(x));
}

long double GreenFormulaTestFn::deriv2(long double dlo,
                                       long double dhi) const {
  const long double w = domain_.width();
  const double x = (dlo <= dhi) ? domain_.x_lo + static_cast<double>(dlo)
                                : domain_.x_hi - static_cast<double>(dhi);
  const HVal h = h_eval(dlo, dhi, w, order_.sigma());
  return static_cast<long double>(f_.d2(x)) * h.h +
         2.0L * static_cast<long double>(f_.d1(x)) * h.h1 +
         static_cast<long double>(f_.value(x)) * h.h2 +
         static_cast<long double>(g_.d2(x));
}

double GreenFormulaTestFn::value_at(double x) const {
  const long double dlo = static_cast<long double>(x) - domain_.x_lo;
  const long double dhi = static_cast<long double>(domain_.x_hi) - x;
  return static_cast<double>(value(dlo, dhi));
}

double GreenFormulaTestFn::boundary_value(bool left) const {
  return g_.value(left ? domain_.x_lo : domain_.x_hi);
}

double GreenFormulaTestFn::f_at_boundary(bool left) const {
  return f_.value(left ? domain_.x_lo : domain_.x_hi);
}

// Integrated-by-parts principal-value form:
//   Lu(x)/c = -[(u(x)-u(b)) dhi^-2s + (u(x)-u(a)) dlo^-2s]/(2s)
//           + (1/2s) [ int_0^m (u'(x-t)-u'(x+t)) t^-2s dt
//                      + one-sided leftover on [m, M] ].
// The symmetric pairing is integrated in t = q^(1/(2-2s)) so the t^(1-2s)
// head becomes bounded; pieces approaching a boundary are integrated in
// r = q^(1/sigma) so the d^(sigma-1) blowup of u' becomes bounded too.
// Every boundary approach is parametrized by the exact distance.
double regional_laplacian_pointwise(const GreenFormulaTestFn& u, double c_ns,
                                    long double dlo, long double dhi,
                                    int bulk) {
  const long double two_s = 2.0L * static_cast<long double>(u.order().s);
  const long double sigma = two_s - 1.0L;
  const long double p = 2.0L - two_s;
  const long double width = u.domain().width();
  const long double m = std::min(dlo, dhi);
  const long double big = std::max(dlo, dhi);
  const bool left_near = dlo <= dhi;

  const long double ux = u.value(dlo, dhi);
  const long double ua = u.boundary_value(true);
  const long double ub = u.boundary_value(false);

  const long double bt = -((ux - ub) * powl(dhi, -two_s) +
                           (ux - ua) * powl(dlo, -two_s)) /
                         two_s;

  // Pairing on [0, m/2]: t = q^(1/p).
  const auto paired_q = [&](long double q) {
    const long double t = powl(q, 1.0L / p);
    return (u.deriv(dlo - t, dhi + t) - u.deriv(dlo + t, dhi - t)) *
           powl(t, -two_s) * powl(q, 1.0L / p - 1.0L) / p;
  };
  long double paired = graded_toward_a(paired_q, 0.0L, powl(0.5L * m, p),
                                       kSmoothLevels, bulk);

  // Pairing on [m/2, m]: the nearer of x-t / x+t reaches its boundary;
  // substitute its distance r = q^(1/sigma).
  const long double dfar = big - m;
  const auto paired_r = [&](long double q) {
    const long double r = powl(q, 1.0L / sigma);
    const long double jac = powl(q, 1.0L / sigma - 1.0L) / sigma;
    long double a1, a2, b1, b2;  // (dlo,dhi) of x-t and x+t at t = m-r
    if (left_near) {
      a1 = r;
      a2 = width - r;
      b1 = 2.0L * m - r;  // dlo + m - r with dlo = m
      b2 = dfar + r;      // dhi - m + r
    } else {
      a1 = dfar + r;      // dlo - m + r
      a2 = 2.0L * m - r;  // dhi + m - r with dhi = m
      b1 = width - r;
      b2 = r;
    }
    return (u.deriv(a1, a2) - u.deriv(b1, b2)) * powl(m - r, -two_s) * jac;
  };
  paired += graded_toward_a(paired_r, 0.0L, powl(0.5L * m, sigma),
                            kSmoothLevels, bulk);

  long double rest = 0.0L;
  if (big > m) {
    const long double half = 0.5L * dfar;
    // t in [m, m+half]: kernel concentration at scale m, graded in q = t-m.
    const auto kernel_side = [&](long double q) {
      const long double r = dfar - q;  // far-side distance of y
      return (left_near ? u.deriv(width - r, r) : u.deriv(r, width - r)) *
             powl(m + q, -two_s);
    };
    // far-side distance r in (0, half]: r = q^(1/sigma).
    const auto far_side = [&](long double q) {
      const long double r = powl(q, 1.0L / sigma);
      const long double jac = powl(q, 1.0L / sigma - 1.0L) / sigma;
      return (left_near ? u.deriv(width - r, r) : u.deriv(r, width - r)) *
             powl(big - r, -two_s) * jac;
    };
    const long double sign = left_near ? -1.0L : 1.0L;
    rest += sign * graded_toward_a(kernel_side, 0.0L, half, kGradeLevels, bulk);
    rest += sign * graded_toward_a(far_side, 0.0L, powl(half, sigma),
                                   kSmoothLevels, bulk);
  }

  return static_cast<double>(c_ns * (bt + (paired + rest) / two_s));
}

std::vector<double> default_tau_sequence(double delta) {
  std::vector<double> tau;
  for (int k = 1; k <= 12; ++k) tau.push_back(delta * std::pow(0.5, k));
  return tau;
}

double fractional_normal_derivative(const GreenFormulaTestFn& u,
                                    bool left_endpoint,
                                    std::span<const double> tau_seq) {
  const double s = u.order().s;
  if (!u.order().has_boundary_trace())
    fail(ErrorKind::input,
         "fractional_normal_derivative: requires s > 1/2");
  if (tau_seq.empty())
    fail(ErrorKind::input, "fractional_normal_derivative: empty tau list");
  const double sigma = u.order().sigma();
  const double width = u.domain().width();
  const double ur = u.boundary_value(left_endpoint);

  std::vector<double> row(tau_seq.size());
  for (std::size_t k = 0; k < tau_seq.size(); ++k) {
    const long double tau = tau_seq[k];
    const long double inward =
        left_endpoint ? u.value(tau, width - tau) : u.value(width - tau, tau);
    row[k] = static_cast<double>(
        sigma * (static_cast<long double>(ur) - inward) / powl(tau, sigma));
  }

  // Richardson ladder on the exponent sequence {p, 1, p+1, 2, p+2, ...}
  // with p = 2-2s, valid for tau halving.
  const double p = 2.0 - 2.0 * s;
  std::vector<double> exponents;
  for (std::size_t j = 0; exponents.size() + 1 < tau_seq.size(); ++j) {
    exponents.push_back(p + static_cast<double>(j));
    if (exponents.size() + 1 >= tau_seq.size()) break;
    exponents.push_back(static_cast<double>(j + 1));
  }
  std::sort(exponents.begin(), exponents.end());

  std::vector<double> col = row;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    const double factor = std::pow(2.0, exponents[j]) - 1.0;
    for (std::size_t k = col.size() - 1; k > j; --k) {
      col[k] = col[k] + (col[k] - col[k - 1]) / factor;
    }
  }
  return col.back();
}

namespace {

// Outer quadrature mesh in distance coordinates: each half of the domain is
// integrated in its own distance variable, with `kOuterLevels` of grading
// inserted below the first base cell.
struct OuterMesh {
  std::vector<long double> edges;  // distance values, ascending from 0
};

// The mesh descends 20 geometric levels into the boundary cells and stops
// there: the identity's integrands may blow up like d^(sigma-1) at the
// boundary itself, so the innermost sliver is left to the refinement study.
OuterMesh outer_half_mesh(double dx, double half_width) {
  OuterMesh mesh;
  const long double cell = dx;
  mesh.edges.push_back(cell * powl(0.5L, kOuterLevels));
  for (int k = kOuterLevels - 1; k >= 1; --k) {
    const long double e = cell * powl(0.5L, k);
    if (e > mesh.edges.back()) mesh.edges.push_back(e);
  }
  long double e = cell;
  while (e < half_width - 1e-12 * half_width) {
    mesh.edges.push_back(e);
    e += cell;
  }
  mesh.edges.push_back(half_width);
  return mesh;
}

template <class F>
long double integrate_halves(const F& f_of_distances, double dx,
                             long double width) {
  // f_of_distances(dlo, dhi) evaluated over both halves.
  const OuterMesh mesh = outer_half_mesh(dx, static_cast<double>(0.5L * width));
  long double acc = 0.0L;
  for (std::size_t i = 0; i + 1 < mesh.edges.size(); ++i) {
    acc += gl_panel(
        [&](long double dlo) { return f_of_distances(dlo, width - dlo); },
        mesh.edges[i], mesh.edges[i + 1]);
    acc += gl_panel(
        [&](long double dhi) { return f_of_distances(width - dhi, dhi); },
        mesh.edges[i], mesh.edges[i + 1]);
  }
  return acc;
}

// Inner integral of the continuum Gagliardo form at the point (dlo,dhi):
//   I(x) = int_Omega (u(x)-u(y)) (v(x)-v(y)) |x-y|^-(1+2s) dy,
// desingularized with the same substitutions as the pointwise operator.
long double gagliardo_inner(const GreenFormulaTestFn& u, const SmoothFn& v,
                            long double dlo, long double dhi, int bulk) {
  const long double two_s = 2.0L * static_cast<long double>(u.order().s);
  const long double sigma = two_s - 1.0L;
  const long double p = 2.0L - two_s;
  const long double width = u.domain().width();
  const long double m = std::min(dlo, dhi);
  const long double big = std::max(dlo, dhi);
  const bool left_near = dlo <= dhi;
  const double x = left_near
                       ? u.domain().x_lo + static_cast<double>(dlo)
                       : u.domain().x_hi - static_cast<double>(dhi);
  const long double ux = u.value(dlo, dhi);
  const long double vx = v.value(x);

  const auto val_at = [&](long double a, long double b) {
    return u.value(a, b);
  };
  const auto v_at = [&](long double a, long double b) {
    const double y = (a <= b) ? u.domain().x_lo + static_cast<double>(a)
                              : u.domain().x_hi - static_cast<double>(b);
    return static_cast<long double>(v.value(y));
  };

  // t in [0, m/2] via t = q^(1/p): the t^(1-2s) pair head becomes bounded.
  const auto paired_q = [&](long double q) {
    const long double t = powl(q, 1.0L / p);
    const long double um = val_at(dlo - t, dhi + t);
    const long double up = val_at(dlo + t, dhi - t);
    const long double vm = v_at(dlo - t, dhi + t);
    const long double vp = v_at(dlo + t, dhi - t);
    return ((ux - um) * (vx - vm) + (ux - up) * (vx - vp)) *
           powl(t, -(1.0L + two_s)) * powl(q, 1.0L / p - 1.0L) / p;
  };
  long double paired = graded_toward_a(paired_q, 0.0L, powl(0.5L * m, p),
                                       kSmoothLevels, bulk);

  // t in [m/2, m] via the near-boundary distance r = q^(1/sigma).
  const long double dfar = big - m;
  const auto paired_r = [&](long double q) {
    const long double r = powl(q, 1.0L / sigma);
    const long double jac = powl(q, 1.0L / sigma - 1.0L) / sigma;
    long double a1, a2, b1, b2;
    if (left_near) {
      a1 = r; a2 = width - r; b1 = 2.0L * m - r; b2 = dfar + r;
    } else {
      a1 = dfar + r; a2 = 2.0L * m - r; b1 = width - r; b2 = r;
    }
    const long double t = m - r;
    return ((ux - val_at(a1, a2)) * (vx - v_at(a1, a2)) +
            (ux - val_at(b1, b2)) * (vx - v_at(b1, b2))) *
           powl(t, -(1.0L + two_s)) * jac;
  };
  paired += graded_toward_a(paired_r, 0.0L, powl(0.5L * m, sigma),
                            kSmoothLevels, bulk);

  long double rest = 0.0L;
  if (big > m) {
    const long double half = 0.5L * dfar;
    const auto one_sided = [&](long double r, long double t) {
      const long double a = left_near ? width - r : r;
      const long double b = left_near ? r : width - r;
      return (ux - val_at(a, b)) * (vx - v_at(a, b)) *
             powl(t, -(1.0L + two_s));
    };
    rest += graded_toward_a(
        [&](long double q) { return one_sided(dfar - q, m + q); }, 0.0L, half,
        kGradeLevels, bulk);
    rest += graded_toward_a(
        [&](long double q) {
          const long double r = powl(q, 1.0L / sigma);
          const long double jac = powl(q, 1.0L / sigma - 1.0L) / sigma;
          return one_sided(r, big - r) * jac;
        },
        0.0L, powl(half, sigma), kSmoothLevels, bulk);
  }

  return paired + rest;
}

}  // namespace

GreenTerms green_formula_residual(const GreenFormulaTestFn& u,
                                  const SmoothFn& v, const Grid& grid,
                                  Normalization form) {
  const double c_ns = normalization_constant(1, u.order().s, form);
  const long double width = u.domain().width();
  const double dx = grid.spacing;
  const int bulk = 16;

  const long double volume = integrate_halves(
      [&](long double dlo, long double dhi) {
        const double x = (dlo <= dhi)
                             ? u.domain().x_lo + static_cast<double>(dlo)
                             : u.domain().x_hi - static_cast<double>(dhi);
        return static_cast<long double>(v.value(x)) *
               static_cast<long double>(
                   regional_laplacian_pointwise(u, c_ns, dlo, dhi, bulk));
      },
      dx, width);

  // A constant v pairs to exactly zero (every v-difference vanishes).
  bool v_constant = true;
  for (int i = 0; i <= 32 && v_constant; ++i) {
    const double x =
        u.domain().x_lo + u.domain().width() * i / 32.0;
    v_constant = v.value(x) == v.value(u.domain().x_lo) && v.d1(x) == 0.0;
  }
  const long double gag =
      v_constant ? 0.0L
                 : integrate_halves(
                       [&](long double dlo, long double dhi) {
                         return gagliardo_inner(u, v, dlo, dhi, bulk);
                       },
                       dx, width);
  const double gag_term = static_cast<double>(0.5L * c_ns * gag);

  const double sigma = u.order().sigma();
  const double n_sigma = normal_deriv_constant(sigma, 128, 1e-10, form);
  const auto tau = default_tau_sequence(0.1 * static_cast<double>(width));
  const double dl = fractional_normal_derivative(u, true, tau);
  const double dr = fractional_normal_derivative(u, false, tau);
  const double boundary = n_sigma * (v.value(u.domain().x_lo) * dl +
                                     v.value(u.domain().x_hi) * dr);

  GreenTerms out;
  out.volume = static_cast<double>(volume);
  out.gagliardo = gag_term;
  out.boundary = boundary;
  out.residual = std::abs(out.volume - out.gagliardo + out.boundary);
  return out;
}

GreenStudy green_refinement_study(const GreenFormulaTestFn& u,
                                  const SmoothFn& v, const Domain& domain,
                                  std::span<const int> n_values,
                                  Normalization form) {
  GreenStudy study;
  for (int n : n_values) {
    Grid grid(domain, n);
    const GreenTerms terms = green_formula_residual(u, v, grid, form);
    study.rows.push_back({n, terms.residual});
  }
  // least-squares slope of log2 residual against log2 N
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int count = static_cast<int>(study.rows.size());
  for (const auto& row : study.rows) {
    const double lx = std::log2(static_cast<double>(row.n_cells));
    const double ly = std::log2(std::max(row.residual, 1e-300));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  study.fitted_rate =
      (count * sxy - sx * sy) / std::max(count * sxx - sx * sx, 1e-300);
  return study;
}

}  // namespace reglap
