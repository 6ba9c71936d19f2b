// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fail.  Default scale is N = 128, s in {0.55, 0.75, 0.95}, T = 0.3.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "green_formula.hpp"
#include "reglap.h"
#include "runner.hpp"
#include "verification.hpp"

using namespace reglap;

namespace {

int g_failures = 0;

void report(int number, const std::string& label, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

const std::vector<double> kOrders = {0.55, 0.75, 0.95};

ProblemData riemann_burgers(const Grid& grid, const std::string& deg_spec,
                            double left, double right, double x0,
                            const std::string& flux_name) {
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
  std::vector<double> flux_params;
  if (flux_name == "advection") flux_params.push_back(1.0);
  std::vector<double> deg_params;
  if (deg_spec == "degenerate") deg_params.push_back(0.5);
  if (deg_spec == "porous") deg_params.push_back(2.0);
  return {std::move(u0),
          BoundarySeries{[left](double) { return left; },
                         [right](double) { return right; }},
          make_flux(flux_name, flux_params),
          make_degeneracy(deg_spec, deg_params)};
}

void criterion_1() {
  double worst = 0.0;
  for (double s : kOrders) {
    for (int n : {32, 128, 512}) {
      const KernelWeights weights =
          assemble_weights(Grid(Domain(0.0, 1.0), n), FractionalOrder(s));
      for (double c : {-1.0, 0.0, 3.7}) {
        const std::vector<double> field(n, c);
        for (double v : apply_regional_laplacian(weights, field))
          worst = std::max(worst, std::abs(v));
      }
    }
  }
  std::ostringstream detail;
  detail << "max |L(c)| = " << worst << ", required 0 bit-exactly";
  report(1, "constant annihilation", worst == 0.0, detail.str());
}

void criterion_2() {
  double worst = 0.0;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 128;
  const Grid grid(Domain(0.0, 1.0), n);
  for (double s : kOrders) {
    const KernelWeights weights = assemble_weights(grid, FractionalOrder(s));
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> u(n), v(n);
      for (int i = 0; i < n; ++i) {
        u[i] = dist(rng);
        v[i] = dist(rng);
      }
      const auto lu = apply_regional_laplacian(weights, u);
      const double lhs = inner_product(grid, lu, v);
      const double rhs = 0.5 * weights.c_ns * gagliardo_form(weights, u, v);
      const double nu = std::sqrt(inner_product(grid, u, u));
      const double nv = std::sqrt(inner_product(grid, v, v));
      worst = std::max(worst, std::abs(lhs - rhs) / (nu * nv));
    }
  }
  std::ostringstream detail;
  detail << "max relative defect " << worst << " <= 1e-12";
  report(2, "discrete duality", worst <= 1e-12, detail.str());
}

void criterion_3() {
  const int n = 64;
  const Grid grid(Domain(0.0, 1.0), n);
  const DegeneracyModel deg = make_degeneracy("degenerate", {{0.5}});
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> dist(-1.0, 1.5);
  std::uniform_int_distribution<int> cell(0, n - 1);
  double worst_product = 0.0, worst_identity = 0.0, worst_summand = 0.0;
  for (double s : kOrders) {
    const KernelWeights weights = assemble_weights(grid, FractionalOrder(s));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> u(n), v(n);
      for (int i = 0; i < n; ++i) {
        u[i] = dist(rng);
        v[i] = dist(rng);
      }
      worst_product = std::max(
          worst_product, product_rule_residual(weights, u, v, cell(rng)));
      const double k = dist(rng);
      const SemiSign sign =
          (trial % 2 == 0) ? SemiSign::plus : SemiSign::minus;
      const auto res =
          sgn_lemma_remainder(weights, deg, u, k, sign, cell(rng));
      worst_identity = std::max(worst_identity, res.identity_residual);
      worst_summand = std::min(worst_summand, res.min_summand);
    }
  }
  std::ostringstream detail;
  detail << "product rule " << worst_product << ", sgn identity "
         << worst_identity << " (<= 1e-13), min summand " << worst_summand
         << " (>= 0)";
  report(3, "product-rule and sgn-lemma identities",
         worst_product <= 1e-13 && worst_identity <= 1e-13 &&
             worst_summand >= 0.0,
         detail.str());
}

void criterion_4() {
  const Domain dom(0.0, 1.0);
  const auto tau = default_tau_sequence(0.1);
  SmoothFn smooth{[](double x) { return std::sin(2.0 * x) + 0.3 * x; },
                  [](double x) { return 2.0 * std::cos(2.0 * x) + 0.3; },
                  [](double x) { return -4.0 * std::sin(2.0 * x); }};
  double worst_regular = 0.0, worst_singular = 0.0;
  for (double s : kOrders) {
    const double sigma = 2.0 * s - 1.0;
    GreenFormulaTestFn regular(SmoothFn::constant(0.0), smooth,
                               FractionalOrder(s), dom);
    GreenFormulaTestFn singular(SmoothFn::constant(1.0),
                                SmoothFn::constant(0.0), FractionalOrder(s),
                                dom);
    for (bool left : {true, false}) {
      worst_regular = std::max(
          worst_regular,
          std::abs(fractional_normal_derivative(regular, left, tau)));
      worst_singular = std::max(
          worst_singular,
          std::abs(fractional_normal_derivative(singular, left, tau) + sigma));
    }
  }
  std::ostringstream detail;
  detail << "C1 trace " << worst_regular << ", |trace(h) + sigma| "
         << worst_singular << " (both <= 1e-6)";
  report(4, "fractional normal derivative",
         worst_regular <= 1e-6 && worst_singular <= 1e-6, detail.str());
}

void criterion_5() {
  double worst = 0.0;
  for (double sigma : {0.1, 0.5, 0.9}) {
    const double coarse = normal_deriv_integral(sigma, 64);
    const double fine = normal_deriv_integral(sigma, 128);
    worst = std::max(worst, std::abs(fine - coarse));
  }
  std::ostringstream detail;
  detail << "max |N(2n) - N(n)| = " << worst << " <= 1e-8";
  report(5, "boundary-weight constant self-convergence", worst <= 1e-8,
         detail.str());
}

void criterion_6() {
  const Domain dom(0.0, 1.0);
  GreenFormulaTestFn u(SmoothFn::constant(1.0), SmoothFn::constant(0.0),
                       FractionalOrder(0.75), dom);
  const std::vector<int> cells = {64, 128, 256, 512};
  const GreenStudy study =
      green_refinement_study(u, SmoothFn::constant(1.0), dom, cells);
  bool decreasing = true;
  std::ostringstream detail;
  detail << "residuals";
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    detail << " " << study.rows[i].residual;
    if (i > 0 && study.rows[i].residual >= study.rows[i - 1].residual)
      decreasing = false;
  }
  detail << ", fitted rate " << study.fitted_rate;
  report(6, "integration-by-parts refinement study", decreasing,
         detail.str());
}

struct MatrixRun {
  SolverConfig cfg;
  ProblemData data;
  Trajectory traj;
};

std::vector<MatrixRun> run_matrix() {
  std::vector<MatrixRun> runs;
  for (const std::string& flux : {"burgers", "advection"}) {
    for (const std::string& deg : {"degenerate", "porous"}) {
      for (double s : kOrders) {
        SolverConfig cfg;
        cfg.n_cells = 128;
        cfg.s = s;
        cfg.t_end = 0.3;
        cfg.cfl = 0.45;
        cfg.eps = 1e-2;
        cfg.save_every = 1;
        const Grid grid(cfg.domain, cfg.n_cells);
        ProblemData data = riemann_burgers(grid, deg, 1.0, 0.0, 0.5, flux);
        Trajectory traj = run_viscous(cfg, data);
        runs.push_back({cfg, std::move(data), std::move(traj)});
      }
    }
  }
  return runs;
}

void criteria_7_8_9(const std::vector<MatrixRun>& matrix) {
  // 7: maximum principle across the matrix
  {
    bool all = true;
    double worst = 0.0;
    for (const auto& run : matrix) {
      const CheckRecord rec =
          check_maximum_principle(run.traj, run.traj.bounds);
      worst = std::max(worst, rec.value);
      all = all && rec.pass;
    }
    std::ostringstream detail;
    detail << "12 runs, worst excess " << worst << " (slack 1e-12)";
    report(7, "discrete maximum principle", all, detail.str());
  }
  // 8: comparison principle on ordered pairs over the same matrix
  {
    bool all = true;
    double worst = -1.0;
    for (const auto& run : matrix) {
      ProblemData upper = run.data;
      for (double& v : upper.u0) v += 0.1;
      auto l = run.data.ub.left, r = run.data.ub.right;
      upper.ub.left = [l](double t) { return l(t) + 0.1; };
      upper.ub.right = [r](double t) { return r(t) + 0.1; };
      SolverConfig cfg = run.cfg;
      cfg.dt_override = run.traj.dt;
      const Trajectory traj_upper = run_viscous(cfg, upper);
      const CheckRecord rec = check_comparison(run.traj, traj_upper);
      worst = std::max(worst, rec.value);
      all = all && rec.pass;
    }
    std::ostringstream detail;
    detail << "12 ordered pairs, worst crossing " << worst
           << " (slack 1e-12)";
    report(8, "comparison principle", all, detail.str());
  }
  // 9: L1 contraction with equal boundary data, 6 pairs
  {
    bool all = true;
    double worst = -1.0;
    int pairs = 0;
    for (std::size_t idx = 0; idx < matrix.size() && pairs < 6; idx += 2) {
      const auto& run = matrix[idx];
      const Grid grid(run.cfg.domain, run.cfg.n_cells);
      ProblemData shifted = run.data;
      for (int i = 0; i < grid.n_cells; ++i) {
        const double fl = grid.face(i), fr = grid.face(i + 1);
        const double x0 = 0.4;
        if (fr <= x0)
          shifted.u0[i] = 1.0;
        else if (fl >= x0)
          shifted.u0[i] = 0.0;
        else
          shifted.u0[i] = (x0 - fl) / grid.spacing;
      }
      SolverConfig cfg = run.cfg;
      cfg.dt_override = run.traj.dt;
      const Trajectory other = run_viscous(cfg, shifted);
      const CheckRecord rec = check_l1_contraction(
          grid, run.traj, other, ContractionMode::equal_boundary,
          run.data.deg, FractionalOrder(run.cfg.s));
      worst = std::max(worst, rec.value);
      all = all && rec.pass;
      ++pairs;
    }
    std::ostringstream detail;
    detail << pairs << " pairs, worst growth per save " << worst
           << " (slack 1e-10)";
    report(9, "L1 contraction with equal boundary data", all, detail.str());
  }
}

void criterion_10(const std::vector<MatrixRun>& matrix) {
  // the Burgers + degenerate run at s = 0.75 from the matrix
  const MatrixRun& run = matrix[1];
  const Grid grid(run.cfg.domain, run.cfg.n_cells);
  const KernelWeights weights =
      assemble_weights(grid, FractionalOrder(run.cfg.s));
  const DegeneracyModel deg_eps =
      regularized_degeneracy(run.data.deg, run.cfg.eps);
  const double delta = std::min(10.0 * grid.spacing, 0.2);
  const auto dict = make_test_dictionary(grid.domain, run.cfg.t_end, delta);
  const auto k_grid = make_k_grid(run.traj.bounds.a, run.traj.bounds.b);
  const EntropySummary summary =
      entropy_residuals(run.traj, run.data.flux, deg_eps, weights,
                        run.traj.bounds.l_f, k_grid, dict, 1e-6);
  const CheckRecord main_rec = check_entropy(summary, 1e-6);
  const CheckRecord control = check_entropy_negative_control(
      grid, run.data.flux, deg_eps, weights, run.traj.bounds.l_f, k_grid,
      dict, 1e-6);
  std::ostringstream detail;
  detail << summary.pairs.size() << " admissible pairs, min margin "
         << main_rec.value << " (>= -1), control margin " << control.value
         << " (< -1)";
  report(10, "entropy inequalities and negative control",
         main_rec.pass && summary.pairs.size() >= 20 && control.pass,
         detail.str());
}

SweepResult run_sweep() {
  SolverConfig cfg;
  cfg.n_cells = 160;
  cfg.s = 0.75;
  cfg.t_end = 0.3;
  cfg.eps = 1e-2;
  cfg.cfl = 0.45;
  const Grid grid(cfg.domain, cfg.n_cells);
  ProblemData data = riemann_burgers(grid, "degenerate", 1.0, 0.0, 0.5,
                                     "burgers");
  const std::vector<double> eps_list = {0.1, 0.05, 0.025, 0.0125};
  return vanishing_viscosity_sweep(cfg, data, eps_list);
}

void criteria_11_12(const SweepResult& sweep) {
  {
    const CheckRecord rec = check_cauchy_sweep(sweep);
    std::ostringstream detail;
    detail << rec.note;
    report(11, "vanishing-viscosity Cauchy property", rec.pass, detail.str());
  }
  {
    const auto recs = check_bv_uniformity(sweep);
    std::ostringstream detail;
    detail << "time-BV ratio " << recs[0].value << ", space-BV ratio "
           << recs[1].value << " (both <= 1.25)";
    report(12, "BV uniformity across the sweep",
           recs[0].pass && recs[1].pass, detail.str());
  }
}

void criterion_13() {
  const int n = 64;
  const Grid grid(Domain(0.0, 1.0), n);
  const KernelWeights weights = assemble_weights(grid, FractionalOrder(0.75));
  const double delta = 0.2;
  const LayerPartition partition = omega_delta_partition(grid, delta);
  const BoundaryLayer layer(grid.domain, delta);
  const CutoffXi xi_cfg(0.05, 1.0, 0.0, layer);
  std::vector<double> xi(n);
  for (int i = 0; i < n; ++i) xi[i] = cutoff_xi(grid.center(i), xi_cfg);

  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  bool all = true;
  double worst_slack = 0.0, worst_resid = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> psi(n), phi(n);
    for (int i = 0; i < n; ++i) {
      psi[i] = dist(rng);
      phi[i] = dist(rng);
    }
    const auto recs =
        check_appendix_decomposition(weights, partition, psi, phi, xi);
    all = all && recs[0].pass && recs[1].pass;
    worst_slack = std::min(worst_slack, recs[0].value);
    worst_resid = std::max(worst_resid, recs[1].value);
  }
  std::ostringstream detail;
  detail << "20 pairs, min inequality slack " << worst_slack
         << ", max identity residual " << worst_resid;
  report(13, "layer decomposition lemma", all, detail.str());
}

void criterion_14() {
  const auto recs = check_cutoff_inequalities(Domain(0.0, 1.0), 1.0, 0.25);
  std::ostringstream detail;
  detail << "weak inequality worst violation " << recs[0].value
         << " (tol " << recs[0].threshold << "); limits note: " << recs[1].note;
  report(14, "cutoff inequalities and vanishing limits",
         recs[0].pass && recs[1].pass, detail.str());
}

void criterion_15() {
  namespace fs = std::filesystem;
  // N = 128 keeps the default eps sweep resolvable by the mollifier.
  const char* config =
      "[problem]\n"
      "n_cells = 128\n"
      "t_end = 0.1\n"
      "[solver]\n"
      "eps = 0.01\n"
      "[verify]\n"
      "checks = all\n";
  std::string reports[2];
  for (int pass = 0; pass < 2; ++pass) {
    const std::string dir = std::string("/tmp/reglap_acceptance_det_") +
                            (pass == 0 ? "a" : "b");
    fs::remove_all(dir);
    reglap_session* session = nullptr;
    if (reglap_session_open_text(config, &session, nullptr, 0) != REGLAP_OK) {
      report(15, "determinism of repeated verify runs", false,
             "session open failed");
      return;
    }
    reglap_session_set_output_dir(session, dir.c_str());
    const reglap_status status = reglap_session_run(session, "verify");
    reglap_session_close(session);
    if (status != REGLAP_OK) {
      report(15, "determinism of repeated verify runs", false,
             "verify returned status " + std::to_string(status));
      return;
    }
    std::ifstream in(dir + "/report.json", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    reports[pass] = buf.str();
  }
  const bool same = !reports[0].empty() && reports[0] == reports[1];
  std::ostringstream detail;
  detail << "report.json bytes " << reports[0].size() << " vs "
         << reports[1].size() << (same ? ", identical" : ", DIFFER");
  report(15, "determinism of repeated verify runs", same, detail.str());
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  const auto matrix = run_matrix();
  criteria_7_8_9(matrix);
  criterion_10(matrix);
  const auto sweep = run_sweep();
  criteria_11_12(sweep);
  criterion_13();
  criterion_14();
  criterion_15();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%d of 15 criteria passed in %.1f s\n", 15 - g_failures,
              seconds);
  return g_failures == 0 ? 0 : 1;
}
