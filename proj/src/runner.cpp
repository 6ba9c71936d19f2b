// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

namespace reglap {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::pair<std::string, std::vector<double>> parse_spec(
    const std::string& spec) {
  const auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::istringstream in(spec.substr(colon + 1));
    std::string token;
    while (std::getline(in, token, ',')) {
      try {
        params.push_back(std::stod(token));
      } catch (...) {
        fail(ErrorKind::config, "bad numeric parameter in '" + spec + "'");
      }
    }
  }
  return {std::move(name), std::move(params)};
}

std::vector<double> build_initial_data(const std::string& spec,
                                       const Grid& grid) {
  auto [name, params] = parse_spec(spec);
  const int n = grid.n_cells;
  std::vector<double> u0(n);
  if (name == "riemann") {
    if (params.size() != 3)
      fail(ErrorKind::config, "u0 riemann expects left,right,x0");
    const double l = params[0], r = params[1], x0 = params[2];
    for (int i = 0; i < n; ++i) {
      const double fl = grid.face(i), fr = grid.face(i + 1);
      if (fr <= x0)
        u0[i] = l;
      else if (fl >= x0)
        u0[i] = r;
      else  // exact cell mean across the jump
        u0[i] = (l * (x0 - fl) + r * (fr - x0)) / grid.spacing;
    }
    return u0;
  }
  if (name == "constant") {
    if (params.size() != 1) fail(ErrorKind::config, "u0 constant expects c");
    std::fill(u0.begin(), u0.end(), params[0]);
    return u0;
  }
  if (name == "sine") {
    if (params.size() != 3)
      fail(ErrorKind::config, "u0 sine expects amp,waves,offset");
    for (int i = 0; i < n; ++i) {
      const double x = (grid.center(i) - grid.domain.x_lo) /
                       grid.domain.width();
      u0[i] = params[2] + params[0] * std::sin(2.0 * M_PI * params[1] * x);
    }
    return u0;
  }
  fail(ErrorKind::config, "unknown u0 spec '" + name + "'");
}

std::function<double(double)> build_boundary_series(const std::string& spec,
                                                    double t_end) {
  auto [name, params] = parse_spec(spec);
  if (name == "constant") {
    if (params.size() != 1)
      fail(ErrorKind::config, "boundary constant expects c");
    const double c = params[0];
    return [c](double) { return c; };
  }
  if (name == "ramp") {
    if (params.size() != 2)
      fail(ErrorKind::config, "boundary ramp expects c0,c1");
    const double c0 = params[0], c1 = params[1];
    return [c0, c1, t_end](double t) {
      const double w = std::clamp(t / t_end, 0.0, 1.0);
      return c0 + (c1 - c0) * w;
    };
  }
  fail(ErrorKind::config, "unknown boundary spec '" + name + "'");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create output directory '" + dir + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t";
  const std::size_t n = traj.states.empty() ? 0 : traj.states[0].size();
  for (std::size_t i = 0; i < n; ++i) out << ",u_" << i;
  out << "\n";
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    out << fmt17(traj.times[j]);
    for (double v : traj.states[j]) out << "," << fmt17(v);
    out << "\n";
  }
}

void write_profiles(const std::string& dir, const Trajectory& traj,
                    const Grid& grid, int stride) {
  std::vector<std::size_t> picks;
  if (stride <= 0) {
    picks.push_back(0);
    if (traj.states.size() > 1) picks.push_back(traj.states.size() - 1);
  } else {
    for (std::size_t j = 0; j < traj.states.size();
         j += static_cast<std::size_t>(stride))
      picks.push_back(j);
    if (picks.empty() || picks.back() != traj.states.size() - 1)
      picks.push_back(traj.states.size() - 1);
  }
  int index = 0;
  for (std::size_t j : picks) {
    char name[64];
    std::snprintf(name, sizeof name, "profile_%04d.dat", index++);
    auto out = open_out(dir + "/" + name);
    out << "# t = " << fmt17(traj.times[j]) << "\n";
    for (int i = 0; i < grid.n_cells; ++i)
      out << fmt17(grid.center(i)) << " " << fmt17(traj.states[j][i]) << "\n";
  }
}

void write_manifest(const std::string& dir, const RunConfig& cfg,
                    const std::string& verb) {
  ordered_json m;
  m["tool"] = "reglap";
  m["version"] = "0.1.0";
  m["format_version"] = 1;
  m["verb"] = verb;
  m["config_hash"] = config_hash(cfg);
  auto out = open_out(dir + "/manifest.json");
  out << m.dump(2) << "\n";
}

void write_weights_csv(const std::string& path, const KernelWeights& w) {
  auto out = open_out(path);
  out << "# " << w.grid.n_cells << " " << fmt17(w.order.s) << " "
      << fmt17(w.c_ns) << "\n";
  for (int i = 0; i < w.grid.n_cells; ++i) {
    for (int j = 0; j < w.grid.n_cells; ++j)
      out << (j ? "," : "") << fmt17(w.w(i, j));
    out << "\n";
  }
}

void write_cauchy_csv(const std::string& path, const SweepResult& sweep) {
  auto out = open_out(path);
  out << "eps_hi,eps_lo,l1_diff\n";
  for (const auto& row : sweep.cauchy)
    out << fmt17(row.eps_hi) << "," << fmt17(row.eps_lo) << ","
        << fmt17(row.l1_diff) << "\n";
}

void write_report_json(const std::string& dir,
                       const VerificationReport& report) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : report.records) {
    ordered_json item;
    item["name"] = rec.name;
    item["anchor"] = rec.anchor;
    item["value"] = rec.value;
    item["threshold"] = rec.threshold;
    item["pass"] = rec.pass;
    if (!rec.note.empty()) item["note"] = rec.note;
    arr.push_back(std::move(item));
  }
  {
    auto out = open_out(dir + "/report.json");
    out << arr.dump(2) << "\n";
  }
  // Timings live in a sibling file so report.json stays byte-reproducible.
  ordered_json times = ordered_json::array();
  for (const auto& rec : report.records) {
    ordered_json item;
    item["name"] = rec.name;
    item["runtime_ms"] = rec.runtime_ms;
    times.push_back(std::move(item));
  }
  auto out = open_out(dir + "/report_runtimes.json");
  out << times.dump(2) << "\n";
}

std::string eps_tag(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  std::string s = buf;
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

}  // namespace

BuiltProblem build_problem(const RunConfig& cfg) {
  const Domain domain(cfg.problem.x_lo, cfg.problem.x_hi);
  const Grid grid(domain, cfg.problem.n_cells);

  SolverConfig solver;
  solver.domain = domain;
  solver.eps = cfg.solver.eps;
  solver.s = cfg.problem.s;
  solver.n_cells = cfg.problem.n_cells;
  solver.t_end = cfg.problem.t_end;
  solver.cfl = cfg.solver.cfl;
  solver.picard_tol = cfg.solver.picard_tol;
  solver.picard_max = cfg.solver.picard_max;
  solver.save_every = cfg.solver.save_every;
  solver.min_steps = cfg.solver.min_steps;
  solver.normalization = cfg.problem.normalization == "standard"
                             ? Normalization::standard
                             : Normalization::paper;

  auto [flux_name, flux_params] = parse_spec(cfg.problem.flux);
  auto [deg_name, deg_params] = parse_spec(cfg.problem.degeneracy);

  ProblemData data{
      build_initial_data(cfg.problem.u0, grid),
      BoundarySeries{
          build_boundary_series(cfg.problem.ub_left, cfg.problem.t_end),
          build_boundary_series(cfg.problem.ub_right, cfg.problem.t_end)},
      make_flux(flux_name, flux_params),
      make_degeneracy(deg_name, deg_params)};

  double delta = cfg.verify.delta;
  if (delta <= 0.0)
    delta = std::min(10.0 * grid.spacing, 0.2 * domain.width());

  return {grid, solver, std::move(data), solver.normalization, delta};
}

VerificationReport run_verification(const RunConfig& cfg) {
  BuiltProblem built = build_problem(cfg);
  const Grid& grid = built.grid;
  const FractionalOrder order(built.solver.s);
  const KernelWeights weights =
      assemble_weights(grid, order, built.normalization);

  static const std::set<std::string> known = {
      "all",        "operator",    "sgn",     "max_principle",
      "comparison", "contraction", "entropy", "sweep",
      "appendix",   "positivity",  "commutator", "boundary_flux",
      "cutoff"};
  std::set<std::string> wanted(cfg.verify.checks.begin(),
                               cfg.verify.checks.end());
  for (const auto& name : wanted) {
    if (!known.count(name))
      fail(ErrorKind::config, "unknown verify check '" + name + "'");
  }
  const bool all = wanted.count("all") > 0;
  const auto enabled = [&](const std::string& group) {
    return all || wanted.count(group) > 0;
  };

  VerificationReport report;
  auto add = [&report](CheckRecord rec) {
    report.records.push_back(std::move(rec));
  };

  // Base viscous run, saved at every step; shared by several checks.
  SolverConfig run_cfg = built.solver;
  run_cfg.save_every = 1;
  Trajectory base;
  const bool need_base = enabled("max_principle") || enabled("comparison") ||
                         enabled("contraction") || enabled("entropy");
  if (need_base) base = run_viscous(run_cfg, built.data);

  if (enabled("operator"))
    for (auto& rec : check_operator_identities(weights, cfg.verify.seed))
      add(std::move(rec));
  if (enabled("sgn"))
    for (auto& rec : check_sgn_lemma(weights, built.data.deg,
                                     cfg.verify.seed))
      add(std::move(rec));

  if (enabled("max_principle")) add(check_maximum_principle(base, base.bounds));

  if (enabled("comparison") || enabled("contraction")) {
    // Partner run with data shifted upward by 0.1 (ordered everywhere).
    ProblemData upper = built.data;
    for (double& v : upper.u0) v += 0.1;
    auto base_l = built.data.ub.left, base_r = built.data.ub.right;
    upper.ub.left = [base_l](double t) { return base_l(t) + 0.1; };
    upper.ub.right = [base_r](double t) { return base_r(t) + 0.1; };
    SolverConfig pair_cfg = run_cfg;
    pair_cfg.dt_override = base.dt;  // shared discretization
    Trajectory traj_upper = run_viscous(pair_cfg, upper);
    if (enabled("comparison")) add(check_comparison(base, traj_upper));
    if (enabled("contraction")) {
      add(check_l1_contraction(grid, base, traj_upper,
                               ContractionMode::full, built.data.deg, order));
      // Equal-boundary pair: initial jump shifted, same boundary data.
      ProblemData shifted = built.data;
      const int offset = std::max(1, grid.n_cells / 10);
      for (int i = 0; i < grid.n_cells; ++i) {
        const int j = std::clamp(i - offset, 0, grid.n_cells - 1);
        shifted.u0[i] = built.data.u0[j];
      }
      Trajectory traj_shifted = run_viscous(pair_cfg, shifted);
      add(check_l1_contraction(grid, base, traj_shifted,
                               ContractionMode::equal_boundary,
                               built.data.deg, order));
    }
  }

  if (enabled("entropy")) {
    const DegeneracyModel deg_eps =
        regularized_degeneracy(built.data.deg, run_cfg.eps);
    const auto dictionary =
        make_test_dictionary(grid.domain, run_cfg.t_end, built.delta);
    const auto k_grid = make_k_grid(base.bounds.a, base.bounds.b);
    if (cfg.verify.inject_non_entropic) {
      // Replace the solver trajectory by the inadmissible fixture; the
      // entropy check is then expected to fail (exit code 4).
      const double speed = built.data.flux.f(1.0) - built.data.flux.f(0.0);
      Trajectory fake = make_non_entropic_trajectory(
          grid, run_cfg.t_end, base.dt,
          grid.domain.x_lo + 0.4 * grid.domain.width(), speed);
      EntropySummary summary =
          entropy_residuals(fake, built.data.flux, deg_eps, weights,
                            base.bounds.l_f, k_grid, dictionary);
      add(check_entropy(summary, cfg.verify.entropy_tol_factor));
    } else {
      EntropySummary summary =
          entropy_residuals(base, built.data.flux, deg_eps, weights,
                            base.bounds.l_f, k_grid, dictionary);
      add(check_entropy(summary, cfg.verify.entropy_tol_factor));
      add(check_entropy_negative_control(grid, built.data.flux, deg_eps,
                                         weights, base.bounds.l_f, k_grid,
                                         dictionary,
                                         cfg.verify.entropy_tol_factor));
    }
  }

  if (enabled("sweep")) {
    std::vector<double> eps_list = cfg.solver.eps_list;
    if (eps_list.empty()) eps_list = {0.1, 0.05, 0.025, 0.0125};
    SweepResult sweep =
        vanishing_viscosity_sweep(built.solver, built.data, eps_list);
    add(check_cauchy_sweep(sweep));
    for (auto& rec : check_bv_uniformity(sweep)) add(std::move(rec));
  }

  if (enabled("appendix")) {
    const LayerPartition partition =
        omega_delta_partition(grid, built.delta);
    const BoundaryLayer layer(grid.domain, built.delta);
    const CutoffXi xi_cfg(0.05, 1.0, 0.0, layer);
    std::mt19937_64 rng(cfg.verify.seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    double worst_ineq = std::numeric_limits<double>::infinity();
    double worst_ident = 0.0;
    CheckRecord ineq_rec, ident_rec;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> psi(grid.n_cells), phi(grid.n_cells),
          xi(grid.n_cells);
      for (int i = 0; i < grid.n_cells; ++i) {
        psi[i] = dist(rng);
        phi[i] = dist(rng);
        xi[i] = cutoff_xi(grid.center(i), xi_cfg);
      }
      auto recs = check_appendix_decomposition(weights, partition, psi, phi,
                                               xi);
      if (recs[0].value < worst_ineq) {
        worst_ineq = recs[0].value;
        ineq_rec = recs[0];
      }
      if (recs[1].value > worst_ident) {
        worst_ident = recs[1].value;
        ident_rec = recs[1];
      }
      if (trial == 0) {
        ineq_rec = recs[0];
        ident_rec = recs[1];
      }
    }
    add(ineq_rec);
    add(ident_rec);
  }

  if (enabled("positivity"))
    add(check_vector_field_positivity(weights, built.data.deg,
                                      cfg.verify.seed));
  if (enabled("commutator"))
    add(check_derivative_commutator(grid.domain, order, built.normalization));
  if (enabled("boundary_flux") && order.has_boundary_trace())
    add(check_boundary_flux_limit(grid.domain, order, built.delta,
                                  built.normalization));
  if (enabled("cutoff")) {
    std::vector<double> ub_samples;
    for (int i = 0; i <= 64; ++i) {
      const double t = built.solver.t_end * i / 64.0;
      ub_samples.push_back(built.data.ub.left(t));
      ub_samples.push_back(built.data.ub.right(t));
    }
    const DataBounds bounds = data_bounds(built.data.u0, ub_samples,
                                          built.data.flux, built.data.deg);
    for (auto& rec : check_cutoff_inequalities(grid.domain,
                                               std::max(bounds.l_f, 1e-8),
                                               0.25 * grid.domain.width()))
      add(std::move(rec));
  }
  return report;
}

RunOutcome run_command(const std::string& verb, const RunConfig& cfg) {
  RunOutcome outcome;
  std::ostringstream summary;
  try {
    const std::string dir = cfg.output.dir;
    ensure_dir(dir);

    if (verb == "assemble") {
      BuiltProblem built = build_problem(cfg);
      const KernelWeights weights = assemble_weights(
          built.grid, FractionalOrder(built.solver.s), built.normalization);
      write_weights_csv(dir + "/weights.csv", weights);
      write_manifest(dir, cfg, verb);
      summary << "assembled " << built.grid.n_cells << "x"
              << built.grid.n_cells << " kernel weights (s="
              << built.solver.s << ", c_ns=" << fmt17(weights.c_ns) << ")\n";
    } else if (verb == "solve") {
      BuiltProblem built = build_problem(cfg);
      Trajectory traj = run_viscous(built.solver, built.data);
      write_trajectory_csv(dir + "/trajectory.csv", traj);
      write_profiles(dir, traj, built.grid, cfg.output.profile_stride);
      write_manifest(dir, cfg, verb);
      summary << "solved to t=" << fmt17(built.solver.t_end) << " in "
              << traj.steps.size() << " steps (dt=" << fmt17(traj.dt)
              << ", eps=" << fmt17(traj.eps) << ")\n";
      summary << "final bounds [" << fmt17(traj.steps.back().min_value)
              << ", " << fmt17(traj.steps.back().max_value) << "]\n";
    } else if (verb == "sweep") {
      BuiltProblem built = build_problem(cfg);
      std::vector<double> eps_list = cfg.solver.eps_list;
      if (eps_list.empty()) eps_list = {0.1, 0.05, 0.025, 0.0125};
      SweepResult sweep =
          vanishing_viscosity_sweep(built.solver, built.data, eps_list);
      for (std::size_t k = 0; k < sweep.runs.size(); ++k) {
        write_trajectory_csv(
            dir + "/trajectory_eps_" + eps_tag(eps_list[k]) + ".csv",
            sweep.runs[k]);
      }
      write_cauchy_csv(dir + "/cauchy.csv", sweep);
      write_manifest(dir, cfg, verb);
      summary << "sweep over " << eps_list.size() << " viscosities\n";
      for (const auto& row : sweep.cauchy)
        summary << "  |u(" << row.eps_lo << ") - u(" << row.eps_hi
                << ")|_L1 = " << fmt17(row.l1_diff) << "\n";
    } else if (verb == "verify") {
      VerificationReport report = run_verification(cfg);
      write_report_json(dir, report);
      write_manifest(dir, cfg, verb);
      for (const auto& rec : report.records) {
        summary << (rec.pass ? "[PASS] " : "[FAIL] ") << rec.name
                << " (value=" << rec.value << ", threshold=" << rec.threshold
                << ")\n";
      }
      if (!report.all_pass()) {
        outcome.exit_code = 4;
        outcome.error = "reglap: error: verification: one or more checks failed";
      }
    } else if (verb == "green") {
      BuiltProblem built = build_problem(cfg);
      const FractionalOrder order(built.solver.s);
      GreenFormulaTestFn u(SmoothFn::constant(1.0), SmoothFn::constant(0.0),
                           order, built.grid.domain);
      GreenStudy study = green_refinement_study(
          u, SmoothFn::constant(1.0), built.grid.domain,
          cfg.verify.green_cells, built.normalization);
      auto out = open_out(dir + "/green.csv");
      out << "n,residual\n";
      for (const auto& row : study.rows)
        out << row.n_cells << "," << fmt17(row.residual) << "\n";
      out << "# fitted_rate," << fmt17(study.fitted_rate) << "\n";
      write_manifest(dir, cfg, verb);
      summary << "integration-by-parts refinement study (f=1, g=0, v=1)\n";
      for (const auto& row : study.rows)
        summary << "  N=" << row.n_cells
                << " residual=" << fmt17(row.residual) << "\n";
      summary << "  fitted rate (log2 residual per log2 N): "
              << fmt17(study.fitted_rate) << "\n";
    } else if (verb == "constants") {
      BuiltProblem built = build_problem(cfg);
      const double s = built.solver.s;
      std::vector<double> ub_samples;
      for (int i = 0; i <= 512; ++i) {
        const double t = built.solver.t_end * i / 512.0;
        ub_samples.push_back(built.data.ub.left(t));
        ub_samples.push_back(built.data.ub.right(t));
      }
      const DataBounds bounds = data_bounds(built.data.u0, ub_samples,
                                            built.data.flux, built.data.deg);
      summary << "C(1," << s << ") paper    = "
              << fmt17(normalization_constant(1, s, Normalization::paper))
              << "\n";
      summary << "C(1," << s << ") standard = "
              << fmt17(normalization_constant(1, s, Normalization::standard))
              << "\n";
      if (s > 0.5) {
        const double sigma = 2.0 * s - 1.0;
        summary << "N_sigma(" << sigma << ")     = "
                << fmt17(normal_deriv_constant(sigma, 128, 1e-10,
                                               built.normalization))
                << "\n";
      }
      summary << "data bounds a=" << fmt17(bounds.a)
              << " b=" << fmt17(bounds.b) << "\n";
      summary << "L_f = " << fmt17(bounds.l_f) << "\n";
      summary << "L_A = " << fmt17(bounds.l_a) << "\n";
    } else {
      outcome.exit_code = 2;
      outcome.error = "reglap: error: config: unknown verb '" + verb + "'";
      return outcome;
    }
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::config:
      case ErrorKind::input:
        outcome.exit_code = 2;
        outcome.error = std::string("reglap: error: config: ") + e.what();
        break;
      case ErrorKind::solver:
        outcome.exit_code = 3;
        outcome.error = std::string("reglap: error: solver: ") + e.what();
        break;
      case ErrorKind::io:
        outcome.exit_code = 5;
        outcome.error = std::string("reglap: error: io: ") + e.what();
        break;
      case ErrorKind::numerical:
        outcome.exit_code = 6;
        outcome.error = std::string("reglap: error: numerical: ") + e.what();
        break;
    }
  }
  outcome.summary = summary.str();
  return outcome;
}

}  // namespace reglap
