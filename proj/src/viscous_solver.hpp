// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "model.hpp"

namespace reglap {

struct SolverConfig {
  Domain domain{0.0, 1.0};
  double eps = 1e-2;          // vanishing-viscosity parameter
  double s = 0.75;            // fractional order
  int n_cells = 128;
  double t_end = 0.3;
  double cfl = 0.45;          // in (0,1); dt = cfl dx / max(L_f, floor)
  double picard_tol = 1e-12;
  int picard_max = 100;
  int save_every = 1;
  int min_steps = 32;         // cap dt <= t_end/min_steps (pure-diffusion runs)
  double dt_override = 0.0;   // > 0 forces the step (paired runs share dt)
  Normalization normalization = Normalization::paper;
};

/// Boundary data as two time series (values at the faces x_lo, x_hi).
struct BoundarySeries {
  std::function<double(double)> left;
  std::function<double(double)> right;
};

struct ProblemData {
  std::vector<double> u0;  // cell values, length n_cells
  BoundarySeries ub;
  FluxModel flux;
  DegeneracyModel deg;
};

struct StepDiagnostics {
  int picard_iterations;
  double min_value;
  double max_value;
  double mass;
  double time_variation;   // sum_i |u^{n+1}_i - u^n_i| dx
  double space_variation;  // sum_i |u_{i+1} - u_i| of the new state
};

struct Trajectory {
  double dx = 0.0;
  double dt = 0.0;
  double eps = 0.0;
  std::vector<double> times;                // saved times (t=0 first)
  std::vector<std::vector<double>> states;  // one field per saved time
  std::vector<double> ub_left;              // boundary samples at t_0..t_M
  std::vector<double> ub_right;
  std::vector<StepDiagnostics> steps;       // one per accepted step
  DataBounds bounds{};                      // of the original data

  double max_time_bv_rate() const;  // max_n time_variation / dt
  double max_space_bv() const;      // max over steps
};

/// Triangular-kernel smoothing with replicate padding; convex weights, so
/// sup norms never grow and constants are fixed points.
std::vector<double> mollify_field(std::span<const double> u, int half_width);

/// Half-width in cells used for data regularization at viscosity eps.
int mollifier_half_width(double eps, double dx, int n_cells);

struct RegularizedData {
  std::vector<double> u0;
  std::vector<double> ub_left;  // samples at t_n, n = 0..n_steps
  std::vector<double> ub_right;
};

RegularizedData regularize_data(const ProblemData& data, double eps,
                                const Grid& grid, double dt, int n_steps);

/// Rusanov (local Lax-Friedrichs) flux; alpha is the sampled max of |f'|
/// over the interval spanned by the two states.
double rusanov_flux(const FluxModel& flux, double u_left, double u_right);

/// Conservative explicit update of the flux term with boundary fluxes
/// against the given face states; lambda = dt/dx.
std::vector<double> explicit_flux_update(std::span<const double> u,
                                         const FluxModel& flux, double lambda,
                                         double ub_left, double ub_right);

struct PicardResult {
  std::vector<double> solution;
  int iterations;
};

/// Solves (I + dt eps S + dt L_frac A_eps(.)) u = rhs by Picard iteration
/// with frozen secant-slope coefficients.  S is the three-point Laplacian
/// with Dirichlet face values (g_left, g_right); every iterate is an
/// M-matrix solve.  Throws Error(solver) when picard_max is exceeded.
PicardResult picard_solve(std::span<const double> rhs,
                          std::span<const double> guess, double dt,
                          const SolverConfig& cfg,
                          const DegeneracyModel& deg_eps,
                          const KernelWeights& weights, double g_left,
                          double g_right);

struct StepResult {
  std::vector<double> state;
  int picard_iterations;
};

/// One IMEX Euler step.  The new state obeys the discrete maximum
/// principle against {old state, boundary values}; violations beyond
/// roundoff raise Error(solver).
StepResult step_imex(std::span<const double> state, double dt,
                     const SolverConfig& cfg, const DegeneracyModel& deg_eps,
                     const FluxModel& flux, const KernelWeights& weights,
                     double ub_l_old, double ub_r_old, double ub_l_new,
                     double ub_r_new);

/// Time step used by run_viscous for the given config and data bounds.
double stable_dt(const SolverConfig& cfg, const DataBounds& bounds,
                 int* n_steps_out);

Trajectory run_viscous(const SolverConfig& cfg, const ProblemData& data);

struct CauchyRow {
  double eps_hi;
  double eps_lo;
  double l1_diff;  // ||u_{eps_lo}(T) - u_{eps_hi}(T)||_L1
};

struct SweepResult {
  std::vector<double> eps_list;
  std::vector<Trajectory> runs;
  std::vector<CauchyRow> cauchy;
};

/// Runs every eps on the same grid and time step; independent runs execute
/// concurrently (worker count capped by REGLAP_THREADS).
SweepResult vanishing_viscosity_sweep(const SolverConfig& cfg,
                                      const ProblemData& data,
                                      std::span<const double> eps_list);

double l1_distance(const Grid& grid, std::span<const double> u,
                   std::span<const double> v);

/// Worker cap: REGLAP_THREADS if set, otherwise hardware concurrency.
unsigned worker_count();

}  // namespace reglap
