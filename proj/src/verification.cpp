// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "quadrature.hpp"

namespace reglap {

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// C-infinity bump: exp(1 - 1/(1-r^2)) on |r|<1, else 0; peak value 1.
double bump(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}
double bump_d(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double q = 1.0 - r * r;
  return bump(r) * (-2.0 * r / (q * q));
}

double quintic(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}
double quintic_d(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return t * t * (30.0 + t * (-60.0 + 30.0 * t));
}

}  // namespace

std::vector<TestPsi> make_test_dictionary(const Domain& domain, double t_end,
                                          double delta) {
  const double lo = domain.x_lo, w = domain.width();
  if (!(delta > 0.0) || delta > 0.22 * w)
    fail(ErrorKind::config, "make_test_dictionary: delta must be <= 0.22*width");

  struct SpaceBump {
    std::string label;
    bool interior;
    double center, width;
  };
  // Interior supports stay inside [lo+0.23w, lo+0.77w], clear of the collar.
  const std::vector<SpaceBump> bumps = {
      {"mid", true, lo + 0.50 * w, 0.12 * w},
      {"left_interior", true, lo + 0.38 * w, 0.12 * w},
      {"right_interior", true, lo + 0.62 * w, 0.12 * w},
      {"left_face", false, lo, 0.25 * w},
      {"right_face", false, lo + w, 0.25 * w},
  };

  struct TimeWindow {
    std::string label;
    std::function<double(double)> value, d;
  };
  const double tc = 0.85 * t_end, ramp = 0.35 * t_end;
  const double c2 = 0.45 * t_end, w2 = 0.35 * t_end;
  const std::vector<TimeWindow> windows = {
      {"early",
       [tc, ramp](double t) { return quintic((tc - t) / ramp); },
       [tc, ramp](double t) { return -quintic_d((tc - t) / ramp) / ramp; }},
      {"late",
       [c2, w2](double t) { return bump((t - c2) / w2); },
       [c2, w2](double t) { return bump_d((t - c2) / w2) / w2; }},
  };

  std::vector<TestPsi> dict;
  for (const auto& b : bumps) {
    for (const auto& win : windows) {
      TestPsi psi;
      psi.label = b.label + "/" + win.label;
      psi.interior = b.interior;
      const double c = b.center, bw = b.width;
      auto wv = win.value, wd = win.d;
      psi.value = [c, bw, wv](double t, double x) {
        return wv(t) * bump((x - c) / bw);
      };
      psi.dt = [c, bw, wd](double t, double x) {
        return wd(t) * bump((x - c) / bw);
      };
      psi.dx = [c, bw, wv](double t, double x) {
        return wv(t) * bump_d((x - c) / bw) / bw;
      };
      dict.push_back(std::move(psi));
    }
  }
  return dict;
}

std::vector<double> make_k_grid(double a, double b) {
  return {a - 0.5,
          a,
          a + 0.25 * (b - a),
          0.5 * (a + b),
          b - 0.25 * (b - a),
          b,
          b + 0.5};
}

CheckRecord check_maximum_principle(const Trajectory& traj,
                                    const DataBounds& bounds) {
  Stopwatch timer;
  const double limit = std::max(std::abs(bounds.a), std::abs(bounds.b));
  double worst = 0.0;
  for (const auto& state : traj.states)
    for (double v : state) worst = std::max(worst, std::abs(v) - limit);
  for (const auto& st : traj.steps) {
    worst = std::max(worst, std::abs(st.min_value) - limit);
    worst = std::max(worst, std::abs(st.max_value) - limit);
  }
  CheckRecord rec;
  rec.name = "maximum_principle";
  rec.anchor = "sup-bound-by-data";
  rec.value = worst;
  rec.threshold = 1e-12 * (1.0 + limit);
  rec.pass = worst <= rec.threshold;
  rec.runtime_ms = timer.ms();
  return rec;
}

CheckRecord check_comparison(const Trajectory& traj_u,
                             const Trajectory& traj_v) {
  Stopwatch timer;
  if (traj_u.states.size() != traj_v.states.size() ||
      traj_u.dt != traj_v.dt || traj_u.dx != traj_v.dx)
    fail(ErrorKind::input, "check_comparison: discretizations differ");
  for (std::size_t i = 0; i < traj_u.states[0].size(); ++i)
    if (traj_u.states[0][i] > traj_v.states[0][i])
      fail(ErrorKind::input, "check_comparison: initial data not ordered");
  for (std::size_t n = 0; n < traj_u.ub_left.size(); ++n)
    if (traj_u.ub_left[n] > traj_v.ub_left[n] ||
        traj_u.ub_right[n] > traj_v.ub_right[n])
      fail(ErrorKind::input, "check_comparison: boundary data not ordered");

  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t j = 0; j < traj_u.states.size(); ++j) {
    for (std::size_t i = 0; i < traj_u.states[j].size(); ++i) {
      worst = std::max(worst, traj_u.states[j][i] - traj_v.states[j][i]);
      scale = std::max({scale, std::abs(traj_u.states[j][i]),
                        std::abs(traj_v.states[j][i])});
    }
  }
  CheckRecord rec;
  rec.name = "comparison_principle";
  rec.anchor = "order-preservation";
  rec.value = worst;
  rec.threshold = 1e-12 * scale;
  rec.pass = worst <= rec.threshold;
  rec.runtime_ms = timer.ms();
  return rec;
}

CheckRecord check_l1_contraction(const Grid& grid, const Trajectory& traj_u,
                                 const Trajectory& traj_v,
                                 ContractionMode mode,
                                 const DegeneracyModel& deg,
                                 const FractionalOrder& order) {
  Stopwatch timer;
  if (traj_u.states.size() != traj_v.states.size() ||
      traj_u.dt != traj_v.dt)
    fail(ErrorKind::input, "check_l1_contraction: discretizations differ");

  std::vector<double> dist(traj_u.states.size());
  for (std::size_t j = 0; j < dist.size(); ++j)
    dist[j] = l1_distance(grid, traj_u.states[j], traj_v.states[j]);

  CheckRecord rec;
  if (mode == ContractionMode::equal_boundary) {
    for (std::size_t n = 0; n < traj_u.ub_left.size(); ++n)
      if (traj_u.ub_left[n] != traj_v.ub_left[n] ||
          traj_u.ub_right[n] != traj_v.ub_right[n])
        fail(ErrorKind::input,
             "check_l1_contraction: boundary data differ in equal_boundary "
             "mode");
    double worst = 0.0;
    for (std::size_t j = 1; j < dist.size(); ++j)
      worst = std::max(worst, dist[j] - dist[j - 1]);
    rec.name = "l1_contraction_equal_boundary";
    rec.anchor = "l1-distance-nonincreasing";
    rec.value = worst;
    rec.threshold = 1e-10;
    rec.pass = worst <= rec.threshold;
  } else {
    // Right side of the contraction bound: initial distance, the L_f
    // boundary flux term, and the fractional boundary trace of
    // |A(u_b)-A(v_b)| extended constantly inward.  The constant extension
    // is a regular function, so its trace evaluates to zero; it is still
    // computed through the trace operation so the approximation is on
    // record.
    const double l_f = std::max(traj_u.bounds.l_f, traj_v.bounds.l_f);
    long double boundary = 0.0L;
    long double trace_term = 0.0L;
    const std::size_t steps = traj_u.ub_left.size() - 1;
    const Domain& dom = grid.domain;
    const auto tau = default_tau_sequence(0.1 * dom.width());
    for (std::size_t n = 0; n < steps; ++n) {
      boundary += std::abs(static_cast<long double>(traj_u.ub_left[n]) -
                           traj_v.ub_left[n]) +
                  std::abs(static_cast<long double>(traj_u.ub_right[n]) -
                           traj_v.ub_right[n]);
      if (order.has_boundary_trace() && n % 16 == 0) {
        for (bool left : {true, false}) {
          const double du = left ? traj_u.ub_left[n] : traj_u.ub_right[n];
          const double dv = left ? traj_v.ub_left[n] : traj_v.ub_right[n];
          const double c = std::abs(deg.a(du) - deg.a(dv));
          GreenFormulaTestFn ext(SmoothFn::constant(0.0),
                                 SmoothFn::constant(c), order, dom);
          trace_term += fractional_normal_derivative(ext, left, tau);
        }
      }
    }
    const double rhs = dist[0] +
                       l_f * static_cast<double>(boundary) * traj_u.dt -
                       static_cast<double>(trace_term) * traj_u.dt;
    double lhs = 0.0;
    for (double d : dist) lhs = std::max(lhs, d);
    rec.name = "l1_contraction_full";
    rec.anchor = "l1-contraction-with-boundary-terms";
    rec.value = lhs - rhs;
    rec.threshold = 0.0;
    rec.pass = true;  // reported, not hard-asserted
    std::ostringstream note;
    note << "lhs_max=" << lhs << " rhs=" << rhs << " trace term "
         << static_cast<double>(trace_term) * traj_u.dt
         << " (constant inward extension)";
    rec.note = note.str();
  }
  rec.runtime_ms = timer.ms();
  return rec;
}

// ---------------------------------------------------------------------------
// Entropy machinery
// ---------------------------------------------------------------------------

namespace {

struct EntropyContext {
  const Trajectory& traj;
  const FluxModel& flux;
  const DegeneracyModel& deg_eps;
  const KernelWeights& weights;
  double l_f;
  int n;       // cells
  int steps;   // time steps M; states 0..M
  double dx;
  double dt;
  double x_lo;
  double x_hi;

  bool uniform_saves() const {
    return traj.states.size() == static_cast<std::size_t>(steps) + 1 &&
           traj.ub_left.size() == static_cast<std::size_t>(steps) + 1;
  }
};

double numerical_entropy_flux(const FluxModel& flux, double a, double b,
                              double k, SemiSign sign) {
  if (sign == SemiSign::plus)
    return rusanov_flux(flux, std::max(a, k), std::max(b, k)) - flux.f(k);
  return flux.f(k) - rusanov_flux(flux, std::min(a, k), std::min(b, k));
}

// |A_eps(u)-A_eps(k)|^pm realized through the sign factor, which is what
// the discrete decomposition telescopes against.
double entropy_of_a(const DegeneracyModel& deg_eps, double u, double k,
                    double ak, SemiSign sign) {
  return sgn_pm(u - k, sign) * (deg_eps.a(u) - ak);
}

}  // namespace

EntropyPairResult entropy_residual(const Trajectory& traj,
                                   const FluxModel& flux,
                                   const DegeneracyModel& deg_eps,
                                   const KernelWeights& weights, double l_f,
                                   double k, SemiSign sign,
                                   const TestPsi& psi) {
  const int n = weights.grid.n_cells;
  const int steps = static_cast<int>(traj.states.size()) - 1;
  EntropyContext ctx{traj,          flux,
                     deg_eps,       weights,
                     l_f,           n,
                     steps,         traj.dx,
                     traj.dt,       weights.grid.domain.x_lo,
                     weights.grid.domain.x_hi};
  if (!ctx.uniform_saves())
    fail(ErrorKind::input,
         "entropy_residual: trajectory must be saved at every step");

  EntropyPairResult out;
  out.k = k;
  out.sign = sign;
  out.psi_label = psi.label;

  // Admissibility (boundary-reaching psi only): sgn^pm(A(u_b)-A(k)) psi = 0
  // sampled at every step.  The base A is deg_eps minus its eps*u part is
  // not recoverable here; the caller passes the regularized model, and the
  // filter uses it directly -- for the data classes exercised both signs
  // agree because A and A_eps share monotonicity and k-ordering.
  if (!psi.interior) {
    const double ak = deg_eps.a(k);
    for (int m = 0; m <= steps; ++m) {
      const double t = m * ctx.dt;
      const double sl = sgn_pm(deg_eps.a(traj.ub_left[m]) - ak,
                               sign);
      const double sr = sgn_pm(deg_eps.a(traj.ub_right[m]) - ak, sign);
      if (sl != 0.0 && psi.value(t, ctx.x_lo) != 0.0) return out;
      if (sr != 0.0 && psi.value(t, ctx.x_hi) != 0.0) return out;
    }
  }
  out.admissible = true;

  const double ak = deg_eps.a(k);
  const double dx = ctx.dx, dt = ctx.dt;

  // psi samples
  std::vector<std::vector<double>> pc(steps + 1, std::vector<double>(n));
  std::vector<double> pfl(steps + 1), pfr(steps + 1);
  for (int m = 0; m <= steps; ++m) {
    const double t = m * dt;
    for (int i = 0; i < n; ++i)
      pc[m][i] = psi.value(t, weights.grid.center(i));
    pfl[m] = psi.value(t, ctx.x_lo);
    pfr[m] = psi.value(t, ctx.x_hi);
  }

  long double lhs_time = 0.0L, t_flux = 0.0L, t_bflux = 0.0L, t_gag = 0.0L,
              t_visc = 0.0L, t_bdry = 0.0L, t_dt = 0.0L, t_init = 0.0L;
  long double abs_dt = 0.0L, abs_flux = 0.0L, abs_gag = 0.0L, abs_bdry = 0.0L,
              abs_init = 0.0L;

  std::vector<double> eta_new(n), eta_old(n), eta_a(n);
  for (int m = 0; m < steps; ++m) {
    const auto& u_old = traj.states[m];
    const auto& u_new = traj.states[m + 1];
    for (int i = 0; i < n; ++i) {
      eta_old[i] = semi_entropy(u_old[i], k, sign);
      eta_new[i] = semi_entropy(u_new[i], k, sign);
      eta_a[i] = entropy_of_a(deg_eps, u_new[i], k, ak, sign);
    }

    for (int i = 0; i < n; ++i)
      lhs_time += static_cast<long double>(eta_new[i] - eta_old[i]) *
                  pc[m][i] * dx;

    // interior numerical entropy fluxes against psi differences
    for (int i = 0; i + 1 < n; ++i) {
      const long double q = numerical_entropy_flux(flux, u_old[i],
                                                   u_old[i + 1], k, sign);
      t_flux += dt * q * (pc[m][i + 1] - pc[m][i]);
      abs_flux += dt * std::abs(q * (pc[m][i + 1] - pc[m][i]));
    }
    // boundary fluxes against the cell-adjacent psi values
    const long double ql = numerical_entropy_flux(flux, traj.ub_left[m],
                                                  u_old[0], k, sign);
    const long double qr = numerical_entropy_flux(flux, u_old[n - 1],
                                                  traj.ub_right[m], k, sign);
    t_bflux += dt * (ql * pc[m][0] - qr * pc[m][n - 1]);

    // L_f-majorized boundary term of the weak formulation (face values)
    const long double bl =
        ctx.l_f * semi_entropy(traj.ub_left[m], k, sign) * pfl[m];
    const long double br =
        ctx.l_f * semi_entropy(traj.ub_right[m], k, sign) * pfr[m];
    t_bdry += dt * (bl + br);
    abs_bdry += dt * (std::abs(bl) + std::abs(br));

    // Gagliardo pairing of |A_eps(u^{m+1}) - A_eps(k)|^pm with psi^m
    long double gag_m = 0.0L;
    for (int i = 0; i < n; ++i) {
      long double row = 0.0L;
      for (int j = 0; j < n; ++j)
        row += static_cast<long double>(weights.w(i, j)) *
               static_cast<long double>(eta_a[i] - eta_a[j]);
      gag_m += row * pc[m][i];
    }
    // <L eta_A, psi> = (c/2) [eta_A, psi]: the row form above already is
    // sum_i psi_i (W-form)_i; multiply by c_ns * dx for the inner product.
    t_gag += dt * weights.c_ns * gag_m * dx;
    abs_gag += std::abs(dt * weights.c_ns * gag_m * dx);

    // epsilon-local pairing with Dirichlet ghost entropies at t_{m+1}
    const double gl = semi_entropy(traj.ub_left[m + 1], k, sign);
    const double gr = semi_entropy(traj.ub_right[m + 1], k, sign);
    long double visc_m = 0.0L;
    for (int i = 0; i < n; ++i) {
      long double lap;
      if (i == 0)
        lap = 3.0L * eta_new[0] - eta_new[1] - 2.0L * gl;
      else if (i == n - 1)
        lap = 3.0L * eta_new[n - 1] - eta_new[n - 2] - 2.0L * gr;
      else
        lap = 2.0L * eta_new[i] - eta_new[i - 1] - eta_new[i + 1];
      visc_m += pc[m][i] * lap;
    }
    t_visc += traj.eps * dt * visc_m / dx;  // (1/dx^2) * dx volume factor

    // pieces of the reported four-term functional
    if (m >= 1) {
      for (int i = 0; i < n; ++i) {
        const long double term =
            static_cast<long double>(eta_old[i]) * (pc[m][i] - pc[m - 1][i]) *
            dx;
        t_dt += term;
        abs_dt += std::abs(term);
      }
    }
  }
  // last interior Abel term (eta at t_M against the last psi difference)
  {
    const auto& u_last = traj.states[steps];
    for (int i = 0; i < n; ++i) {
      const long double eta = semi_entropy(u_last[i], k, sign);
      const long double term =
          eta * (pc[steps][i] - pc[steps - 1][i]) * dx;
      t_dt += term;
      abs_dt += std::abs(term);
    }
  }
  for (int i = 0; i < n; ++i) {
    const long double term =
        static_cast<long double>(semi_entropy(traj.states[0][i], k, sign)) *
        pc[0][i] * dx;
    t_init += term;
    abs_init += std::abs(term);
  }

  const long double r_sch =
      -lhs_time + t_flux + t_bflux - t_gag - t_visc;
  const long double r_raw = t_dt + t_init + t_flux + t_bdry - t_gag;

  out.r_sch = static_cast<double>(r_sch);
  out.r_raw = static_cast<double>(r_raw);
  out.scale = static_cast<double>(abs_dt + abs_flux + abs_gag + abs_bdry +
                                  abs_init);
  out.viscous_term = static_cast<double>(t_visc);
  out.boundary_gap = static_cast<double>(t_bflux - t_bdry);
  return out;
}

EntropySummary entropy_residuals(const Trajectory& traj, const FluxModel& flux,
                                 const DegeneracyModel& deg_eps,
                                 const KernelWeights& weights, double l_f,
                                 std::span<const double> k_grid,
                                 std::span<const TestPsi> dictionary,
                                 double tol_factor) {
  EntropySummary summary;
  double min_margin = std::numeric_limits<double>::infinity();
  for (double k : k_grid) {
    for (SemiSign sign : {SemiSign::plus, SemiSign::minus}) {
      for (const auto& psi : dictionary) {
        EntropyPairResult r =
            entropy_residual(traj, flux, deg_eps, weights, l_f, k, sign, psi);
        if (!r.admissible) {
          ++summary.skipped;
          continue;
        }
        // normalized margin: -1 marks the tolerance boundary
        const double margin = r.r_sch / (tol_factor * r.scale + 1e-12);
        min_margin = std::min(min_margin, margin);
        summary.pairs.push_back(std::move(r));
      }
    }
  }
  summary.min_scaled_residual = summary.pairs.empty() ? 0.0 : min_margin;
  return summary;
}

CheckRecord check_entropy(const EntropySummary& summary, double tol_factor) {
  CheckRecord rec;
  rec.name = "entropy_inequality";
  rec.anchor = "kruzhkov-semi-entropy-inequalities";
  rec.value = summary.min_scaled_residual;
  rec.threshold = -1.0;
  rec.pass = !summary.pairs.empty() && rec.value >= rec.threshold;
  (void)tol_factor;
  std::ostringstream note;
  note << summary.pairs.size() << " admissible pairs, " << summary.skipped
       << " skipped";
  rec.note = note.str();
  return rec;
}

Trajectory make_non_entropic_trajectory(const Grid& grid, double t_end,
                                        double dt, double x0, double speed) {
  const int steps = std::max(1, static_cast<int>(std::lround(t_end / dt)));
  Trajectory traj;
  traj.dx = grid.spacing;
  traj.dt = t_end / steps;
  traj.eps = 0.0;
  for (int m = 0; m <= steps; ++m) {
    const double t = m * traj.dt;
    const double pos = x0 + speed * t;
    std::vector<double> state(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
      const double fl = grid.face(i), fr = grid.face(i + 1);
      if (fr <= pos)
        state[i] = 0.0;
      else if (fl >= pos)
        state[i] = 1.0;
      else
        state[i] = (fr - pos) / grid.spacing;
    }
    traj.times.push_back(t);
    traj.states.push_back(std::move(state));
    traj.ub_left.push_back(0.0);
    traj.ub_right.push_back(1.0);
  }
  return traj;
}

CheckRecord check_entropy_negative_control(
    const Grid& grid, const FluxModel& flux, const DegeneracyModel& deg_eps,
    const KernelWeights& weights, double l_f, std::span<const double> k_grid,
    std::span<const TestPsi> dictionary, double tol_factor) {
  Stopwatch timer;
  // Traveling 0 -> 1 jump at the Rankine-Hugoniot speed of the flux: a
  // shock where a rarefaction is admissible.
  const double speed = (flux.f(1.0) - flux.f(0.0)) / 1.0;
  const Domain& dom = grid.domain;
  const double dt = 0.4 * grid.spacing / std::max(1.0, l_f);
  Trajectory fake = make_non_entropic_trajectory(
      grid, 0.3, dt, dom.x_lo + 0.4 * dom.width(), speed);
  fake.eps = 0.0;

  EntropySummary summary = entropy_residuals(fake, flux, deg_eps, weights, l_f,
                                             k_grid, dictionary, tol_factor);
  CheckRecord rec;
  rec.name = "entropy_negative_control";
  rec.anchor = "inadmissible-jump-flagged";
  rec.value = summary.min_scaled_residual;
  rec.threshold = -1.0;
  rec.pass = rec.value < rec.threshold;  // the violator must be flagged
  rec.runtime_ms = timer.ms();
  std::ostringstream note;
  note << "violation detected over " << summary.pairs.size() << " pairs";
  rec.note = note.str();
  return rec;
}

std::vector<CheckRecord> check_bv_uniformity(const SweepResult& sweep,
                                             double ratio_limit) {
  if (sweep.runs.size() < 3)
    fail(ErrorKind::input, "check_bv_uniformity: need >= 3 runs");
  double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
  double smin = tmin, smax = 0.0;
  for (const auto& run : sweep.runs) {
    const double tb = run.max_time_bv_rate();
    const double sb = run.max_space_bv();
    tmin = std::min(tmin, tb);
    tmax = std::max(tmax, tb);
    smin = std::min(smin, sb);
    smax = std::max(smax, sb);
  }
  std::vector<CheckRecord> out;
  CheckRecord t;
  t.name = "time_bv_uniformity";
  t.anchor = "time-variation-eps-uniform";
  t.value = tmax / std::max(tmin, 1e-300);
  t.threshold = ratio_limit;
  t.pass = t.value <= ratio_limit;
  out.push_back(t);
  CheckRecord s;
  s.name = "space_bv_uniformity";
  s.anchor = "space-variation-eps-uniform";
  s.value = smax / std::max(smin, 1e-300);
  s.threshold = ratio_limit;
  s.pass = s.value <= ratio_limit;
  out.push_back(s);
  return out;
}

CheckRecord check_cauchy_sweep(const SweepResult& sweep) {
  CheckRecord rec;
  rec.name = "vanishing_viscosity_cauchy";
  rec.anchor = "eps-sequence-l1-cauchy";
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < sweep.cauchy.size(); ++i)
    worst = std::max(worst,
                     sweep.cauchy[i + 1].l1_diff - sweep.cauchy[i].l1_diff);
  rec.value = worst;
  rec.threshold = 0.0;
  rec.pass = sweep.cauchy.size() >= 2 && worst < 0.0;
  std::ostringstream note;
  for (const auto& row : sweep.cauchy) note << row.l1_diff << " ";
  rec.note = "l1 differences: " + note.str();
  return rec;
}

// ---------------------------------------------------------------------------
// Operator-level checks
// ---------------------------------------------------------------------------

std::vector<CheckRecord> check_operator_identities(const KernelWeights& weights,
                                                   unsigned seed) {
  std::vector<CheckRecord> out;
  const int n = weights.grid.n_cells;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  {
    Stopwatch timer;
    CheckRecord rec;
    rec.name = "constant_annihilation";
    rec.anchor = "operator-kills-constants";
    double worst = 0.0;
    for (double c : {-1.0, 0.0, 3.7}) {
      std::vector<double> field(n, c);
      for (double v : apply_regional_laplacian(weights, field))
        worst = std::max(worst, std::abs(v));
    }
    rec.value = worst;
    rec.threshold = 0.0;
    rec.pass = worst == 0.0;
    rec.runtime_ms = timer.ms();
    out.push_back(rec);
  }
  {
    Stopwatch timer;
    CheckRecord rec;
    rec.name = "weights_symmetry";
    rec.anchor = "kernel-symmetry";
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst = std::max(worst,
                         std::abs(weights.w(i, j) - weights.w(j, i)));
    rec.value = worst;
    rec.threshold = 0.0;
    rec.pass = worst == 0.0;
    rec.runtime_ms = timer.ms();
    out.push_back(rec);
  }
  {
    Stopwatch timer;
    CheckRecord rec;
    rec.name = "discrete_duality";
    rec.anchor = "operator-pairing-equals-gagliardo";
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> u(n), v(n);
      for (int i = 0; i < n; ++i) {
        u[i] = dist(rng);
        v[i] = dist(rng);
      }
      const auto lu = apply_regional_laplacian(weights, u);
      const double lhs = inner_product(weights.grid, lu, v);
      const double rhs = 0.5 * weights.c_ns * gagliardo_form(weights, u, v);
      const double nu = std::sqrt(inner_product(weights.grid, u, u));
      const double nv = std::sqrt(inner_product(weights.grid, v, v));
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(nu * nv, 1e-300));
    }
    rec.value = worst;
    rec.threshold = 1e-12;
    rec.pass = worst <= rec.threshold;
    rec.runtime_ms = timer.ms();
    out.push_back(rec);
  }
  {
    Stopwatch timer;
    CheckRecord rec;
    rec.name = "positive_semidefinite";
    rec.anchor = "energy-nonnegative";
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> u(n);
      for (int i = 0; i < n; ++i) u[i] = dist(rng);
      const auto lu = apply_regional_laplacian(weights, u);
      worst = std::min(worst, inner_product(weights.grid, lu, u));
    }
    rec.value = worst;
    rec.threshold = -1e-13;
    rec.pass = worst >= rec.threshold;
    rec.runtime_ms = timer.ms();
    out.push_back(rec);
  }
  {
    Stopwatch timer;
    CheckRecord rec;
    rec.name = "product_rule";
    rec.anchor = "discrete-product-formula";
    std::uniform_int_distribution<int> cell(0, n - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> u(n), v(n);
      for (int i = 0; i < n; ++i) {
        u[i] = dist(rng);
        v[i] = dist(rng);
      }
      worst = std::max(worst,
                       product_rule_residual(weights, u, v, cell(rng)));
    }
    rec.value = worst;
    rec.threshold = 1e-13;
    rec.pass = worst <= rec.threshold;
    rec.runtime_ms = timer.ms();
    out.push_back(rec);
  }
  return out;
}

std::vector<CheckRecord> check_sgn_lemma(const KernelWeights& weights,
                                         const DegeneracyModel& deg,
                                         unsigned seed) {
  const int n = weights.grid.n_cells;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.5);
  std::uniform_int_distribution<int> cell(0, n - 1);

  Stopwatch timer;
  double worst_identity = 0.0;
  double worst_summand = 0.0;
  double min_remainder = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = dist(rng);
    const double k = dist(rng);
    const SemiSign sign = (trial % 2 == 0) ? SemiSign::plus : SemiSign::minus;
    const SgnLemmaResult res =
        sgn_lemma_remainder(weights, deg, u, k, sign, cell(rng));
    worst_identity = std::max(worst_identity, res.identity_residual);
    worst_summand = std::min(worst_summand, res.min_summand);
    min_remainder = std::min(min_remainder, res.remainder);
  }
  std::vector<CheckRecord> out;
  CheckRecord ident;
  ident.name = "sgn_decomposition_identity";
  ident.anchor = "entropy-of-A-decomposition";
  ident.value = worst_identity;
  ident.threshold = 1e-13;
  ident.pass = worst_identity <= ident.threshold;
  ident.runtime_ms = timer.ms();
  out.push_back(ident);
  CheckRecord termwise;
  termwise.name = "sgn_remainder_termwise";
  termwise.anchor = "remainder-nonnegative";
  termwise.value = std::min(worst_summand, min_remainder);
  termwise.threshold = 0.0;
  termwise.pass = termwise.value >= 0.0;
  out.push_back(termwise);
  return out;
}

std::vector<CheckRecord> check_appendix_decomposition(
    const KernelWeights& weights, const LayerPartition& partition,
    std::span<const double> psi, std::span<const double> phi,
    std::span<const double> xi) {
  const double dx = weights.grid.spacing;
  const auto& w = weights.w;
  const auto& layer = partition.layer_cells;
  const auto& interior = partition.interior_cells;

  const auto pair_term = [&](int i, int j) -> long double {
    return static_cast<long double>(w(i, j)) * (xi[i] - xi[j]) *
           (phi[i] - phi[j]);
  };

  Stopwatch timer;
  // Inequality: full weighted sum bounded below by the layer-layer sum minus
  // the two interior x layer correction sums.
  long double lhs = 0.0L;
  for (int i = 0; i < weights.grid.n_cells; ++i)
    for (int j = 0; j < weights.grid.n_cells; ++j)
      lhs += static_cast<long double>(psi[i]) * pair_term(i, j);
  long double rhs = 0.0L;
  for (int i : layer)
    for (int j : layer) rhs += static_cast<long double>(psi[i]) * pair_term(i, j);
  for (int x : interior)
    for (int y : layer) {
      rhs -= static_cast<long double>(w(x, y)) * (psi[x] - psi[y]) *
             (xi[x] - xi[y]) * phi[y];
      rhs -= static_cast<long double>(w(x, y)) * (xi[x] - xi[y]) * psi[y] *
             phi[y];
    }
  long double scale = 0.0L;
  for (int i = 0; i < weights.grid.n_cells; ++i)
    for (int j = 0; j < weights.grid.n_cells; ++j)
      scale += std::abs(static_cast<long double>(psi[i]) * pair_term(i, j));

  std::vector<CheckRecord> out;
  CheckRecord ineq;
  ineq.name = "layer_decomposition_inequality";
  ineq.anchor = "cutoff-pairing-lower-bound";
  ineq.value = static_cast<double>((lhs - rhs) * dx);
  ineq.threshold = -1e-12 * std::max(1.0, static_cast<double>(scale * dx));
  ineq.pass = ineq.value >= ineq.threshold;
  ineq.runtime_ms = timer.ms();
  out.push_back(ineq);

  // Identity: [phi, xi] = layer-layer + 2 * layer-interior, exact because
  // xi is constant across interior pairs.
  long double full = 0.0L, ll = 0.0L, li = 0.0L;
  for (int i = 0; i < weights.grid.n_cells; ++i)
    for (int j = 0; j < weights.grid.n_cells; ++j) full += pair_term(i, j);
  for (int i : layer)
    for (int j : layer) ll += pair_term(i, j);
  for (int i : layer)
    for (int j : interior) li += pair_term(i, j);
  CheckRecord ident;
  ident.name = "layer_decomposition_identity";
  ident.anchor = "cutoff-pairing-split";
  ident.value = std::abs(static_cast<double>((full - ll - 2.0L * li) * dx));
  ident.threshold = 1e-12 * std::max(1.0, static_cast<double>(scale * dx));
  ident.pass = ident.value <= ident.threshold;
  out.push_back(ident);
  return out;
}

CheckRecord check_vector_field_positivity(const KernelWeights& weights,
                                          const DegeneracyModel& deg,
                                          unsigned seed) {
  Stopwatch timer;
  const int n = weights.grid.n_cells;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };

  double worst = 0.0;
  double scale = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(n), field(n);
    for (int i = 0; i < n; ++i) {
      u[i] = dist(rng);
      field[i] = dist(rng);
    }
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i) {
      const double ai = deg.a_prime(u[i]) * field[i];
      for (int j = 0; j < n; ++j) {
        const double aj = deg.a_prime(u[j]) * field[j];
        acc += static_cast<long double>(weights.w(i, j)) *
               (sgn(field[i]) - sgn(field[j])) * (ai - aj);
      }
    }
    const double value = static_cast<double>(acc * weights.grid.spacing);
    worst = std::min(worst, value);
    scale = std::max(scale, std::abs(value));
  }
  CheckRecord rec;
  rec.name = "vector_field_positivity";
  rec.anchor = "sign-field-pairing-nonnegative";
  rec.value = worst;
  rec.threshold = -1e-13 * scale;
  rec.pass = worst >= rec.threshold;
  rec.runtime_ms = timer.ms();
  return rec;
}

CheckRecord check_derivative_commutator(const Domain& domain,
                                        const FractionalOrder& order,
                                        Normalization form) {
  Stopwatch timer;
  const double lo = domain.x_lo, width = domain.width();
  const auto fn = [lo, width](double x) {
    return std::sin(M_PI * (x - lo) / width);
  };
  const double c_ns = normalization_constant(1, order.s, form);
  const double two_s = 2.0 * order.s;

  std::vector<double> residuals;
  for (int n : {64, 128, 256}) {
    Grid grid(domain, n);
    KernelWeights weights = assemble_weights(grid, order, form);
    const double dx = grid.spacing;
    std::vector<double> u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = fn(grid.center(i));
      v[i] = (fn(grid.center(i) + dx) - fn(grid.center(i))) / dx;
    }
    const auto lu = apply_regional_laplacian(weights, u);
    const auto lv = apply_regional_laplacian(weights, v);
    double worst = 0.0;
    for (int i = n / 3; i < 2 * n / 3 - 1; ++i) {
      const double x = grid.center(i);
      const double bc =
          c_ns * ((fn(domain.x_hi) - u[i]) *
                      std::pow(domain.x_hi - x, -(1.0 + two_s)) -
                  (fn(domain.x_lo) - u[i]) *
                      std::pow(x - domain.x_lo, -(1.0 + two_s)));
      const double lhs = (lu[i + 1] - lu[i]) / dx;
      worst = std::max(worst, std::abs(lhs - lv[i] - bc));
    }
    residuals.push_back(worst);
  }

  CheckRecord rec;
  rec.name = "derivative_commutator";
  rec.anchor = "gradient-operator-commutator";
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i)
    worst_ratio = std::max(worst_ratio, residuals[i + 1] / residuals[i]);
  rec.value = worst_ratio;
  rec.threshold = 1.0;
  rec.pass = worst_ratio < 1.0;
  rec.runtime_ms = timer.ms();
  std::ostringstream note;
  for (double r : residuals) note << r << " ";
  rec.note = "residuals: " + note.str();
  return rec;
}

CheckRecord check_boundary_flux_limit(const Domain& domain,
                                      const FractionalOrder& order,
                                      double delta, Normalization form) {
  Stopwatch timer;
  const double c_ns = normalization_constant(1, order.s, form);
  const double two_s = 2.0 * order.s;
  const double lo = domain.x_lo, hi = domain.x_hi, width = domain.width();
  const BoundaryLayer layer(domain, delta);

  // Psi vanishes to second order at the boundary so the limit kernel is
  // integrable for every s in (0,1).
  const auto psi = [&](double x) {
    const double q = (x - lo) * (hi - x) / (0.25 * width * width);
    return q * q;
  };

  // I_rho = (c/2) [beta_rho, psi] on a fine grid, weights on the fly.
  const int n = 4096;
  const Grid grid(domain, n);
  const double dx = grid.spacing;
  std::vector<double> by_offset(n, 0.0);
  const double scale = std::pow(dx, -two_s) / two_s;
  for (int k = 1; k < n; ++k)
    by_offset[k] =
        scale * (std::pow(k - 0.5, -two_s) - std::pow(k + 0.5, -two_s));

  std::vector<double> psi_c(n);
  for (int i = 0; i < n; ++i) psi_c[i] = psi(grid.center(i));

  std::vector<double> values;
  for (int k = 1; k <= 5; ++k) {
    const double rho = delta * std::pow(0.5, k);
    std::vector<double> beta(n);
    for (int i = 0; i < n; ++i)
      beta[i] = boundary_bump(grid.center(i), rho, layer);
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        acc += 2.0L * static_cast<long double>(by_offset[j - i]) *
               (beta[i] - beta[j]) * (psi_c[i] - psi_c[j]);
      }
    }
    values.push_back(0.5 * c_ns * static_cast<double>(acc * dx));
  }

  // limit: c int_Omega sum_r (psi(x) - psi(r)) / |x-r|^(1+2s) dx
  const auto kernel = [&](double x) {
    return psi(x) * (std::pow(x - lo, -(1.0 + two_s)) +
                     std::pow(hi - x, -(1.0 + two_s)));
  };
  const double mid = lo + 0.5 * width;
  const double limit =
      c_ns * (integrate_panels(kernel, graded_edges(lo, mid, 60, true)) +
              integrate_panels(kernel, graded_edges(mid, hi, 60, false)));

  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    diffs.push_back(std::abs(values[i + 1] - values[i]));
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
    worst = std::max(worst, diffs[i + 1] - diffs[i]);

  CheckRecord rec;
  rec.name = "boundary_flux_limit";
  rec.anchor = "bump-flux-cauchy-limit";
  rec.value = worst;
  rec.threshold = 0.0;
  rec.pass = worst < 0.0;
  rec.runtime_ms = timer.ms();
  std::ostringstream note;
  note << "values:";
  for (double v : values) note << " " << v;
  note << " limit " << limit << " gap "
       << std::abs(values.back() - limit);
  rec.note = note.str();
  return rec;
}

std::vector<CheckRecord> check_cutoff_inequalities(const Domain& domain,
                                                   double l_f, double delta) {
  Stopwatch timer;
  const double lo = domain.x_lo, hi = domain.x_hi, width = domain.width();
  const BoundaryLayer layer(domain, delta);

  struct Beta {
    std::string label;
    std::function<double(double)> value;
  };
  const std::vector<Beta> betas = {
      {"one", [](double) { return 1.0; }},
      {"center", [=](double x) { return bump((x - lo - 0.5 * width) / (0.4 * width)); }},
      {"left_layer", [=](double x) { return bump((x - lo - delta) / (0.3 * width)); }},
      {"wide", [=](double x) { return 0.5 + 0.5 * bump((x - lo - 0.5 * width) / (0.9 * width)); }},
      {"right_layer", [=](double x) { return bump((x - hi + delta) / (0.3 * width)); }},
  };

  std::vector<CheckRecord> out;
  const double eps = 0.2;
  const CutoffXi cfg(eps, l_f, 0.0, layer);

  double worst_gap = -std::numeric_limits<double>::infinity();
  double finest_violation = 0.0;
  double finest_tol = 0.0;
  for (const auto& beta : betas) {
    std::vector<double> violations;
    for (int n : {128, 256, 512}) {
      Grid grid(domain, n);
      const double dx = grid.spacing;
      long double lhs = 0.0L, rhs1 = 0.0L;
      double sup_beta = 0.0;
      for (int i = 0; i < n; ++i) {
        const double xl = grid.face(i), xr = grid.face(i + 1);
        const double gxi = (cutoff_xi(xr, cfg) - cutoff_xi(xl, cfg)) / dx;
        const double gbe = (beta.value(xr) - beta.value(xl)) / dx;
        const double bc = beta.value(grid.center(i));
        lhs += static_cast<long double>(l_f) * std::abs(gxi) * bc * dx;
        rhs1 += static_cast<long double>(eps) * gxi * gbe * dx;
        sup_beta = std::max(sup_beta, std::abs(bc));
      }
      const double rhs2 = (l_f + eps * cfg.l_laplacian_h) *
                          (beta.value(lo) + beta.value(hi));
      const double violation =
          static_cast<double>(lhs - rhs1) - rhs2;
      violations.push_back(violation);
      if (n == 512) {
        finest_violation = std::max(finest_violation, violation);
        finest_tol = std::max(
            finest_tol, (l_f + eps * cfg.l_laplacian_h) * cfg.rate() * dx *
                            std::max(sup_beta, 1.0) * width);
      }
    }
    for (std::size_t i = 0; i + 1 < violations.size(); ++i)
      worst_gap = std::max(worst_gap, std::max(violations[i + 1], 0.0) -
                                          std::max(violations[i], 0.0));
  }
  CheckRecord weak;
  weak.name = "cutoff_weak_inequality";
  weak.anchor = "cutoff-gradient-inequality";
  weak.value = finest_violation;
  weak.threshold = finest_tol;
  weak.pass = finest_violation <= finest_tol && worst_gap <= 1e-12;
  weak.runtime_ms = timer.ms();
  {
    std::ostringstream note;
    note << "max refinement growth of violation " << worst_gap;
    weak.note = note.str();
  }
  out.push_back(weak);

  // Both vanishing limits, by composite quadrature on a fixed fine grid.
  const Grid fine(domain, 2048);
  std::vector<double> q1, q2;
  for (double e : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const CutoffXi cx(e, l_f, 0.0, layer);
    long double l1 = 0.0L, grad = 0.0L;
    for (int i = 0; i < fine.n_cells; ++i) {
      l1 += std::abs(cutoff_xi(fine.center(i), cx) - 1.0) * fine.spacing;
      const double gxi = (cutoff_xi(fine.face(i + 1), cx) -
                          cutoff_xi(fine.face(i), cx)) /
                         fine.spacing;
      grad += std::abs(gxi) * fine.spacing;
    }
    q1.push_back(static_cast<double>(l1));
    q2.push_back(e * static_cast<double>(grad));
  }
  double worst_inc = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < q1.size(); ++i) {
    worst_inc = std::max(worst_inc, q1[i + 1] - q1[i]);
    worst_inc = std::max(worst_inc, q2[i + 1] - q2[i]);
  }
  CheckRecord limits;
  limits.name = "cutoff_l1_limits";
  limits.anchor = "cutoff-vanishing-limits";
  limits.value = worst_inc;
  limits.threshold = 0.0;
  limits.pass = worst_inc < 0.0;
  {
    std::ostringstream note;
    note << "|xi-1|_L1:";
    for (double v : q1) note << " " << v;
    note << "  eps|grad xi|_L1:";
    for (double v : q2) note << " " << v;
    limits.note = note.str();
  }
  out.push_back(limits);
  return out;
}

}  // namespace reglap
