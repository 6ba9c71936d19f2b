// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "viscous_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

namespace reglap {

double Trajectory::max_time_bv_rate() const {
  double out = 0.0;
  for (const auto& st : steps) out = std::max(out, st.time_variation / dt);
  return out;
}

double Trajectory::max_space_bv() const {
  double out = 0.0;
  for (const auto& st : steps) out = std::max(out, st.space_variation);
  return out;
}

int mollifier_half_width(double eps, double dx, int n_cells) {
  // The discrete triangular kernel of half-width m smooths over (m+1)
  // cells, so m+1 is matched to eps/dx.
  const int m = static_cast<int>(std::lround(eps / dx)) - 1;
  return std::clamp(m, 0, n_cells / 4);
}

std::vector<double> mollify_field(std::span<const double> u, int half_width) {
  const int n = static_cast<int>(u.size());
  if (half_width <= 0 || n == 0) return {u.begin(), u.end()};
  const int m = half_width;
  const double norm = static_cast<double>(m + 1) * (m + 1);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (int k = -m; k <= m; ++k) {
      const int j = std::clamp(i + k, 0, n - 1);  // replicate at the edges
      acc += static_cast<long double>((m + 1 - std::abs(k)) / norm) *
             static_cast<long double>(u[j]);
    }
    out[i] = static_cast<double>(acc);
  }
  return out;
}

RegularizedData regularize_data(const ProblemData& data, double eps,
                                const Grid& grid, double dt, int n_steps) {
  RegularizedData out;
  out.u0 = mollify_field(data.u0,
                         mollifier_half_width(eps, grid.spacing, grid.n_cells));
  out.ub_left.resize(n_steps + 1);
  out.ub_right.resize(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    out.ub_left[n] = data.ub.left(n * dt);
    out.ub_right[n] = data.ub.right(n * dt);
  }
  const int mt =
      std::clamp(static_cast<int>(std::lround(eps / dt)), 0, (n_steps + 1) / 4);
  out.ub_left = mollify_field(out.ub_left, mt);
  out.ub_right = mollify_field(out.ub_right, mt);
  return out;
}

double rusanov_flux(const FluxModel& flux, double u_left, double u_right) {
  const double lo = std::min(u_left, u_right);
  const double hi = std::max(u_left, u_right);
  const double alpha = sampled_sup(flux.f_prime, lo, hi, 17);
  return 0.5 * (flux.f(u_left) + flux.f(u_right)) -
         0.5 * alpha * (u_right - u_left);
}

std::vector<double> explicit_flux_update(std::span<const double> u,
                                         const FluxModel& flux, double lambda,
                                         double ub_left, double ub_right) {
  const int n = static_cast<int>(u.size());
  std::vector<double> fluxes(n + 1);
  fluxes[0] = rusanov_flux(flux, ub_left, u[0]);
  for (int i = 0; i + 1 < n; ++i)
    fluxes[i + 1] = rusanov_flux(flux, u[i], u[i + 1]);
  fluxes[n] = rusanov_flux(flux, u[n - 1], ub_right);

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = u[i] - lambda * (fluxes[i + 1] - fluxes[i]);
  return out;
}

PicardResult picard_solve(std::span<const double> rhs,
                          std::span<const double> guess, double dt,
                          const SolverConfig& cfg,
                          const DegeneracyModel& deg_eps,
                          const KernelWeights& weights, double g_left,
                          double g_right) {
  const int n = weights.grid.n_cells;
  const double dx = weights.grid.spacing;
  const double loc = cfg.eps * dt / (dx * dx);

  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = rhs[i];
  b(0) += 2.0 * loc * g_left;
  b(n - 1) += 2.0 * loc * g_right;

  std::vector<double> w(guess.begin(), guess.end());
  Eigen::MatrixXd m(n, n);
  for (int iter = 1; iter <= cfg.picard_max; ++iter) {
    for (int i = 0; i < n; ++i) {
      double offdiag_sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) {
          m(i, j) = 0.0;
          continue;
        }
        const double coeff = dt * weights.c_ns * weights.w(i, j) *
                             secant_slope(deg_eps, w[i], w[j]);
        m(i, j) = -coeff;
        offdiag_sum += coeff;
      }
      const double ghost = (i == 0 || i == n - 1) ? 3.0 : 2.0;
      m(i, i) = 1.0 + ghost * loc + offdiag_sum;
      if (i > 0) m(i, i - 1) -= loc;
      if (i < n - 1) m(i, i + 1) -= loc;
    }

    Eigen::VectorXd sol = m.llt().solve(b);
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      delta = std::max(delta, std::abs(sol(i) - w[i]));
      w[i] = sol(i);
    }
    if (delta <= cfg.picard_tol) return {std::move(w), iter};
  }
  std::ostringstream msg;
  msg << "picard_solve: no convergence within " << cfg.picard_max
      << " iterations (tol " << cfg.picard_tol << ")";
  fail(ErrorKind::solver, msg.str());
}

StepResult step_imex(std::span<const double> state, double dt,
                     const SolverConfig& cfg, const DegeneracyModel& deg_eps,
                     const FluxModel& flux, const KernelWeights& weights,
                     double ub_l_old, double ub_r_old, double ub_l_new,
                     double ub_r_new) {
  const double dx = weights.grid.spacing;
  double lo = std::min({ub_l_old, ub_r_old, ub_l_new, ub_r_new});
  double hi = std::max({ub_l_old, ub_r_old, ub_l_new, ub_r_new});
  for (double v : state) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double alpha = sampled_sup(flux.f_prime, lo, hi, 257);
  if (dt * alpha > dx * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "step_imex: CFL violated (dt*max|f'| = " << dt * alpha
        << " > dx = " << dx << ")";
    fail(ErrorKind::solver, msg.str());
  }

  std::vector<double> star =
      explicit_flux_update(state, flux, dt / dx, ub_l_old, ub_r_old);
  PicardResult res = picard_solve(star, star, dt, cfg, deg_eps, weights,
                                  ub_l_new, ub_r_new);

  const double slack = 1e-12 * (1.0 + std::abs(hi) + std::abs(lo));
  for (double v : res.solution) {
    if (v < lo - slack || v > hi + slack)
      fail(ErrorKind::solver, "step_imex: discrete maximum principle violated");
  }
  return {std::move(res.solution), res.iterations};
}

double stable_dt(const SolverConfig& cfg, const DataBounds& bounds,
                 int* n_steps_out) {
  double dt;
  if (cfg.dt_override > 0.0) {
    dt = cfg.dt_override;
  } else {
    const double dx = cfg.domain.width() / cfg.n_cells;
    const double floor = 1e-300;
    dt = cfg.cfl * dx / std::max(bounds.l_f, floor);
    dt = std::min(dt, cfg.t_end / std::max(cfg.min_steps, 1));
  }
  const int n_steps = static_cast<int>(std::ceil(cfg.t_end / dt - 1e-12));
  if (n_steps_out) *n_steps_out = n_steps;
  return cfg.t_end / n_steps;
}

Trajectory run_viscous(const SolverConfig& cfg, const ProblemData& data) {
  if (!(cfg.eps > 0.0)) fail(ErrorKind::config, "run_viscous: eps must be > 0");
  if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0))
    fail(ErrorKind::config, "run_viscous: cfl must lie in (0,1)");
  if (static_cast<int>(data.u0.size()) != cfg.n_cells)
    fail(ErrorKind::input, "run_viscous: u0 length != n_cells");
  for (double v : data.u0)
    if (!std::isfinite(v))
      fail(ErrorKind::input, "run_viscous: non-finite initial data");

  const Grid grid(cfg.domain, cfg.n_cells);
  const KernelWeights weights =
      assemble_weights(grid, FractionalOrder(cfg.s), cfg.normalization);
  const DegeneracyModel deg_eps = regularized_degeneracy(data.deg, cfg.eps);

  // Bounds of the raw data: boundary series sampled densely over [0, T].
  std::vector<double> ub_samples;
  for (int i = 0; i <= 512; ++i) {
    const double t = cfg.t_end * i / 512.0;
    ub_samples.push_back(data.ub.left(t));
    ub_samples.push_back(data.ub.right(t));
  }
  const DataBounds bounds = data_bounds(data.u0, ub_samples, data.flux,
                                        data.deg);

  int n_steps = 0;
  const double dt = stable_dt(cfg, bounds, &n_steps);
  const RegularizedData reg = regularize_data(data, cfg.eps, grid, dt, n_steps);

  Trajectory traj;
  traj.dx = grid.spacing;
  traj.dt = dt;
  traj.eps = cfg.eps;
  traj.bounds = bounds;
  traj.ub_left = reg.ub_left;
  traj.ub_right = reg.ub_right;
  traj.times.push_back(0.0);
  traj.states.push_back(reg.u0);

  std::vector<double> u = reg.u0;
  for (int n = 0; n < n_steps; ++n) {
    StepResult step =
        step_imex(u, dt, cfg, deg_eps, data.flux, weights, reg.ub_left[n],
                  reg.ub_right[n], reg.ub_left[n + 1], reg.ub_right[n + 1]);
    std::vector<double>& next = step.state;

    StepDiagnostics diag{};
    diag.picard_iterations = step.picard_iterations;
    diag.min_value = *std::min_element(next.begin(), next.end());
    diag.max_value = *std::max_element(next.begin(), next.end());
    long double mass = 0.0L, tv = 0.0L, sv = 0.0L;
    for (int i = 0; i < cfg.n_cells; ++i) {
      mass += static_cast<long double>(next[i]);
      tv += std::abs(static_cast<long double>(next[i]) -
                     static_cast<long double>(u[i]));
      if (i + 1 < cfg.n_cells)
        sv += std::abs(static_cast<long double>(next[i + 1]) -
                       static_cast<long double>(next[i]));
    }
    diag.mass = static_cast<double>(mass * grid.spacing);
    diag.time_variation = static_cast<double>(tv * grid.spacing);
    diag.space_variation = static_cast<double>(sv);
    traj.steps.push_back(diag);

    u = std::move(next);
    const bool save = ((n + 1) % cfg.save_every == 0) || (n + 1 == n_steps);
    if (save) {
      traj.times.push_back((n + 1) * dt);
      traj.states.push_back(u);
    }
  }
  return traj;
}

unsigned worker_count() {
  if (const char* env = std::getenv("REGLAP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

SweepResult vanishing_viscosity_sweep(const SolverConfig& cfg,
                                      const ProblemData& data,
                                      std::span<const double> eps_list) {
  if (eps_list.size() < 2)
    fail(ErrorKind::config, "sweep: need at least two eps values");
  for (std::size_t i = 0; i + 1 < eps_list.size(); ++i) {
    if (!(eps_list[i + 1] < eps_list[i]) &&
        eps_list[i + 1] != eps_list[i])
      fail(ErrorKind::config, "sweep: eps list must be nonincreasing");
  }

  SweepResult out;
  out.eps_list.assign(eps_list.begin(), eps_list.end());
  out.runs.resize(eps_list.size());

  const unsigned workers =
      std::min<unsigned>(worker_count(),
                         static_cast<unsigned>(eps_list.size()));
  std::size_t next_index = 0;
  while (next_index < eps_list.size()) {
    std::vector<std::future<Trajectory>> batch;
    const std::size_t start = next_index;
    for (unsigned w = 0; w < workers && next_index < eps_list.size(); ++w) {
      const double eps = eps_list[next_index++];
      SolverConfig run_cfg = cfg;
      run_cfg.eps = eps;
      batch.push_back(std::async(std::launch::async, [run_cfg, &data] {
        return run_viscous(run_cfg, data);
      }));
    }
    for (std::size_t k = 0; k < batch.size(); ++k)
      out.runs[start + k] = batch[k].get();
  }

  const Grid grid(cfg.domain, cfg.n_cells);
  for (std::size_t k = 0; k + 1 < out.runs.size(); ++k) {
    out.cauchy.push_back(
        {eps_list[k], eps_list[k + 1],
         l1_distance(grid, out.runs[k + 1].states.back(),
                     out.runs[k].states.back())});
  }
  return out;
}

double l1_distance(const Grid& grid, std::span<const double> u,
                   std::span<const double> v) {
  if (u.size() != v.size())
    fail(ErrorKind::input, "l1_distance: length mismatch");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += std::abs(static_cast<long double>(u[i]) -
                    static_cast<long double>(v[i]));
  return static_cast<double>(acc * grid.spacing);
}

}  // namespace reglap
