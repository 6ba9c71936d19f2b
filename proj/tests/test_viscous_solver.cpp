// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "viscous_solver.hpp"

#include <cmath>
#include <doctest.h>
#include <random>

using namespace reglap;

namespace {

ProblemData riemann_problem(const Grid& grid, double left, double right,
                            double x0) {
  std::vector<double> u0(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i) {
    const double fl = grid.face(i), fr = grid.face(i + 1);
    if (fr <= x0)
      u0[i] = left;
    else if (fl >= x0)
      u0[i] = right;
    else
      u0[i] = (left * (x0 - fl) + right * (fr - x0)) / grid.spacing;
  }
  return {std::move(u0),
          BoundarySeries{[left](double) { return left; },
                         [right](double) { return right; }},
          make_flux("burgers", {}),
          make_degeneracy("degenerate", {{0.5}})};
}

}  // namespace

TEST_CASE("triangular mollifier") {
  SUBCASE("constants are fixed points") {
    std::vector<double> c(32, 1.7);
    CHECK(mollify_field(c, 5) == c);
  }
  SUBCASE("sup norm never grows on a step") {
    std::vector<double> step(64, 0.0);
    for (int i = 32; i < 64; ++i) step[i] = 1.0;
    const auto smooth = mollify_field(step, 7);
    for (double v : smooth) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  SUBCASE("L1 error of the smoothed unit step has the closed form") {
    // sum_i |smooth - step| = m (m+2) / (3 (m+1)) in cell units.
    const int n = 128;
    std::vector<double> step(n, 0.0);
    for (int i = n / 2; i < n; ++i) step[i] = 1.0;
    double prev = 0.0;
    for (int m : {16, 8}) {
      const auto smooth = mollify_field(step, m);
      double err = 0.0;
      for (int i = 0; i < n; ++i) err += std::abs(smooth[i] - step[i]);
      const double closed =
          static_cast<double>(m) * (m + 2) / (3.0 * (m + 1));
      CHECK(err == doctest::Approx(closed).epsilon(1e-12));
      if (prev > 0.0) {
        CHECK(prev / err > 1.8);  // halving the width about halves the error
        CHECK(prev / err < 2.1);
      }
      prev = err;
    }
  }
}

TEST_CASE("rusanov flux") {
  const FluxModel burgers = make_flux("burgers", {});
  SUBCASE("consistency") {
    for (double u : {-1.0, 0.0, 0.3, 2.0})
      CHECK(rusanov_flux(burgers, u, u) == doctest::Approx(burgers.f(u)));
  }
  SUBCASE("documented value at (1,0)") {
    CHECK(rusanov_flux(burgers, 1.0, 0.0) == doctest::Approx(0.75));
  }
  SUBCASE("monotone in both arguments") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
      const double a = dist(rng), b = dist(rng);
      CHECK(rusanov_flux(burgers, a + h, b) >=
            rusanov_flux(burgers, a - h, b) - 1e-12);
      CHECK(rusanov_flux(burgers, a, b + h) <=
            rusanov_flux(burgers, a, b - h) + 1e-12);
    }
  }
}

TEST_CASE("explicit update moves the jump at the shock speed") {
  const Grid grid(Domain(0.0, 1.0), 64);
  ProblemData data = riemann_problem(grid, 1.0, 0.0, 0.5);
  const double dt = 0.4 * grid.spacing;  // alpha = 1
  const auto next =
      explicit_flux_update(data.u0, data.flux, dt / grid.spacing, 1.0, 0.0);
  // exact solution: the jump sits at 0.5 + dt/2; compare cell means
  const double pos = 0.5 + 0.5 * dt;
  long double scheme_mass = 0.0L, exact_mass = 0.0L;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double fl = grid.face(i), fr = grid.face(i + 1);
    double exact;
    if (fr <= pos)
      exact = 1.0;
    else if (fl >= pos)
      exact = 0.0;
    else
      exact = (pos - fl) / grid.spacing;
    scheme_mass += next[i];
    exact_mass += exact;
  }
  // conservative scheme: the masses agree to machine precision
  CHECK(static_cast<double>(scheme_mass) ==
        doctest::Approx(static_cast<double>(exact_mass)).epsilon(1e-13));
  // and the displaced mass is positive (jump moved right)
  long double moved = 0.0L;
  for (int i = 0; i < grid.n_cells; ++i) moved += next[i] - data.u0[i];
  CHECK(static_cast<double>(moved) > 0.0);
}

TEST_CASE("picard solve") {
  const Grid grid(Domain(0.0, 1.0), 32);
  const KernelWeights weights = assemble_weights(grid, FractionalOrder(0.75));
  SolverConfig cfg;
  cfg.n_cells = 32;
  cfg.eps = 0.05;
  cfg.picard_tol = 1e-12;

  SUBCASE("linear A needs a single productive iteration") {
    const DegeneracyModel lin = regularized_degeneracy(
        make_degeneracy("linear", {{0.7}}), cfg.eps);
    std::vector<double> rhs(32);
    for (int i = 0; i < 32; ++i) rhs[i] = std::sin(2.0 * M_PI * i / 32.0);
    const auto res = picard_solve(rhs, rhs, 1e-3, cfg, lin, weights, 0.0, 0.0);
    // constant coefficients: the first solve already is the fixed point,
    // the second only confirms it
    CHECK(res.iterations <= 2);
  }
  SUBCASE("a-posteriori residual of the nonlinear system") {
    const DegeneracyModel deg = regularized_degeneracy(
        make_degeneracy("degenerate", {{0.5}}), cfg.eps);
    std::vector<double> rhs(32);
    for (int i = 0; i < 32; ++i) rhs[i] = 0.5 + 0.5 * std::sin(6.0 * i);
    const double dt = 1e-3, g_left = 0.4, g_right = 0.6;
    const auto res =
        picard_solve(rhs, rhs, dt, cfg, deg, weights, g_left, g_right);
    const auto& w = res.solution;
    const double loc = cfg.eps * dt / (grid.spacing * grid.spacing);
    double matrix_norm = 0.0;
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
      long double val = w[i];
      if (i == 0)
        val += loc * (3.0L * w[0] - w[1] - 2.0 * g_left);
      else if (i == 31)
        val += loc * (3.0L * w[31] - w[30] - 2.0 * g_right);
      else
        val += loc * (2.0L * w[i] - w[i - 1] - w[i + 1]);
      long double nonlocal = 0.0L;
      double row = 0.0;
      for (int j = 0; j < 32; ++j) {
        nonlocal += static_cast<long double>(weights.w(i, j)) *
                    (deg.a(w[i]) - deg.a(w[j]));
        row += weights.w(i, j);
      }
      val += dt * weights.c_ns * nonlocal;
      matrix_norm = std::max(
          matrix_norm, 1.0 + 4.0 * loc + 2.0 * dt * weights.c_ns * row * 3.0);
      worst = std::max(worst, std::abs(static_cast<double>(val - rhs[i])));
    }
    CHECK(worst <= 10.0 * cfg.picard_tol * matrix_norm);
  }
  SUBCASE("iteration budget error") {
    SolverConfig tight = cfg;
    tight.picard_max = 1;
    tight.picard_tol = 1e-300;
    const DegeneracyModel deg = regularized_degeneracy(
        make_degeneracy("degenerate", {{0.2}}), cfg.eps);
    std::vector<double> rhs(32, 0.9);
    CHECK_THROWS_AS(
        picard_solve(rhs, rhs, 0.5, tight, deg, weights, 0.0, 0.9), Error);
  }
}

TEST_CASE("imex step preserves constant steady states exactly") {
  const Grid grid(Domain(0.0, 1.0), 32);
  const KernelWeights weights = assemble_weights(grid, FractionalOrder(0.75));
  SolverConfig cfg;
  cfg.n_cells = 32;
  cfg.eps = 0.02;
  const double c = 0.7;
  std::vector<double> state(32, c);
  const DegeneracyModel deg =
      regularized_degeneracy(make_degeneracy("none", {}), cfg.eps);
  const auto res = step_imex(state, 1e-3, cfg, deg, make_flux("zero", {}),
                             weights, c, c, c, c);
  for (double v : res.state) CHECK(v == doctest::Approx(c).epsilon(1e-14));
}

TEST_CASE("implicit diffusion of a step stays inside the data bounds") {
  const Grid grid(Domain(0.0, 1.0), 32);
  const KernelWeights weights = assemble_weights(grid, FractionalOrder(0.75));
  SolverConfig cfg;
  cfg.n_cells = 32;
  cfg.eps = 0.05;
  std::vector<double> step(32, 0.0);
  for (int i = 16; i < 32; ++i) step[i] = 1.0;
  const DegeneracyModel deg =
      regularized_degeneracy(make_degeneracy("none", {}), cfg.eps);
  const auto res = step_imex(step, 2e-3, cfg, deg, make_flux("zero", {}),
                             weights, 0.0, 1.0, 0.0, 1.0);
  for (double v : res.state) {
    CHECK(v > 0.0 - 1e-12);
    CHECK(v < 1.0 + 1e-12);
  }
  // strictly between the data bounds away from the walls (M-matrix mixing)
  CHECK(res.state[16] < 1.0);
  CHECK(res.state[15] > 0.0);
}

TEST_CASE("picard iteration count does not grow as dt shrinks") {
  const Grid grid(Domain(0.0, 1.0), 48);
  const KernelWeights weights = assemble_weights(grid, FractionalOrder(0.75));
  SolverConfig cfg;
  cfg.n_cells = 48;
  cfg.eps = 0.01;
  const DegeneracyModel deg = regularized_degeneracy(
      make_degeneracy("degenerate", {{0.5}}), cfg.eps);
  const FluxModel flux = make_flux("burgers", {});
  std::vector<double> state(48);
  for (int i = 0; i < 48; ++i) state[i] = (i < 24) ? 1.0 : 0.0;

  int prev = 1 << 20;
  const double dt0 = 0.4 * grid.spacing;
  for (double dt : {dt0, dt0 / 2, dt0 / 4}) {
    const auto res =
        step_imex(state, dt, cfg, deg, flux, weights, 1.0, 0.0, 1.0, 0.0);
    CHECK(res.picard_iterations <= prev);
    prev = res.picard_iterations;
  }
}

TEST_CASE("viscous run basics") {
  SolverConfig cfg;
  cfg.n_cells = 32;
  cfg.t_end = 0.05;
  cfg.eps = 0.01;
  cfg.min_steps = 8;

  SUBCASE("zero data stays zero") {
    const Grid grid(cfg.domain, cfg.n_cells);
    ProblemData data{std::vector<double>(32, 0.0),
                     BoundarySeries{[](double) { return 0.0; },
                                    [](double) { return 0.0; }},
                     make_flux("burgers", {}),
                     make_degeneracy("degenerate", {{0.5}})};
    const Trajectory traj = run_viscous(cfg, data);
    for (const auto& state : traj.states)
      for (double v : state) CHECK(v == 0.0);
  }
  SUBCASE("constant data is a steady state to machine precision") {
    ProblemData data{std::vector<double>(32, 0.8),
                     BoundarySeries{[](double) { return 0.8; },
                                    [](double) { return 0.8; }},
                     make_flux("burgers", {}),
                     make_degeneracy("degenerate", {{0.5}})};
    const Trajectory traj = run_viscous(cfg, data);
    for (const auto& state : traj.states)
      for (double v : state) CHECK(v == doctest::Approx(0.8).epsilon(1e-13));
  }
  SUBCASE("riemann run respects the data bounds") {
    const Grid grid(cfg.domain, cfg.n_cells);
    ProblemData data = riemann_problem(grid, 1.0, 0.0, 0.5);
    const Trajectory traj = run_viscous(cfg, data);
    for (const auto& st : traj.steps) {
      CHECK(st.min_value >= -1e-12);
      CHECK(st.max_value <= 1.0 + 1e-12);
    }
    CHECK(traj.states.size() == traj.steps.size() + 1);
  }
}

TEST_CASE("mass bookkeeping with odd-symmetric data and odd A") {
  SolverConfig cfg;
  cfg.n_cells = 64;
  cfg.t_end = 0.02;
  cfg.eps = 0.02;
  cfg.min_steps = 8;
  const Grid grid(cfg.domain, cfg.n_cells);
  std::vector<double> u0(cfg.n_cells);
  for (int i = 0; i < cfg.n_cells; ++i)
    u0[i] = 0.5 * std::sin(2.0 * M_PI * grid.center(i));
  ProblemData data{std::move(u0),
                   BoundarySeries{[](double) { return 0.0; },
                                  [](double) { return 0.0; }},
                   make_flux("zero", {}),
                   make_degeneracy("porous", {{2.0}})};  // odd A = u|u|
  const Trajectory traj = run_viscous(cfg, data);
  for (const auto& st : traj.steps) {
    CHECK(std::abs(st.mass) <= 1e-12 * 0.5);
  }
}

TEST_CASE("vanishing-viscosity sweep") {
  SolverConfig cfg;
  cfg.n_cells = 40;
  cfg.t_end = 0.05;
  cfg.min_steps = 8;
  const Grid grid(cfg.domain, cfg.n_cells);

  SUBCASE("pure diffusion differences shrink with eps") {
    std::vector<double> u0(cfg.n_cells);
    for (int i = 0; i < cfg.n_cells; ++i)
      u0[i] = (grid.center(i) > 0.5) ? 1.0 : 0.0;
    ProblemData data{std::move(u0),
                     BoundarySeries{[](double) { return 0.0; },
                                    [](double) { return 1.0; }},
                     make_flux("zero", {}),
                     make_degeneracy("none", {})};
    const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125};
    const SweepResult sweep = vanishing_viscosity_sweep(cfg, data, eps);
    REQUIRE(sweep.cauchy.size() == 3);
    CHECK(sweep.cauchy[1].l1_diff < sweep.cauchy[0].l1_diff);
    CHECK(sweep.cauchy[2].l1_diff < sweep.cauchy[1].l1_diff);
  }
  SUBCASE("repeated eps gives identical runs") {
    ProblemData data = riemann_problem(grid, 1.0, 0.0, 0.5);
    const std::vector<double> eps = {0.05, 0.05};
    const SweepResult sweep = vanishing_viscosity_sweep(cfg, data, eps);
    CHECK(sweep.cauchy[0].l1_diff == 0.0);
  }
  SUBCASE("eps list must not increase") {
    ProblemData data = riemann_problem(grid, 1.0, 0.0, 0.5);
    const std::vector<double> eps = {0.05, 0.1};
    CHECK_THROWS_AS(vanishing_viscosity_sweep(cfg, data, eps), Error);
  }
}

TEST_CASE("runs are deterministic") {
  SolverConfig cfg;
  cfg.n_cells = 32;
  cfg.t_end = 0.03;
  cfg.eps = 0.02;
  cfg.min_steps = 8;
  const Grid grid(cfg.domain, cfg.n_cells);
  const ProblemData data = riemann_problem(grid, 1.0, 0.0, 0.4);
  const Trajectory a = run_viscous(cfg, data);
  const Trajectory b = run_viscous(cfg, data);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t j = 0; j < a.states.size(); ++j)
    for (int i = 0; i < cfg.n_cells; ++i)
      CHECK(a.states[j][i] == b.states[j][i]);
}
