// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace reglap {

struct ProblemSpec {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int n_cells = 128;
  double s = 0.75;
  double t_end = 0.3;
  std::string flux = "burgers";
  std::string degeneracy = "degenerate:0.5";
  std::string u0 = "riemann:1,0,0.5";
  std::string ub_left = "constant:1";
  std::string ub_right = "constant:0";
  std::string normalization = "paper";
};

struct SolverSpec {
  double eps = 1e-2;
  std::vector<double> eps_list;  // nonempty enables sweep mode
  double cfl = 0.45;
  double picard_tol = 1e-12;
  int picard_max = 100;
  int save_every = 1;
  int min_steps = 32;
};

struct VerifySpec {
  std::vector<std::string> checks = {"all"};
  double delta = 0.0;  // 0 = default 10*dx capped at 0.2*width
  double entropy_tol_factor = 1e-6;
  bool inject_non_entropic = false;
  unsigned seed = 2026;
  std::vector<int> green_cells = {64, 128, 256, 512};
};

struct OutputSpec {
  std::string dir = "out";
  int profile_stride = 0;  // 0 = first and last snapshot only
};

struct RunConfig {
  ProblemSpec problem;
  SolverSpec solver;
  VerifySpec verify;
  OutputSpec output;
};

struct ConfigDiagnostic {
  std::string section;
  std::string key;
  int line = 0;
  std::string message;

  std::string to_string() const;
};

struct ParseResult {
  RunConfig config;
  std::vector<ConfigDiagnostic> errors;
  bool ok() const { return errors.empty(); }
};

/// Parses INI-style text with sections [problem], [solver], [verify],
/// [output].  Collects every error (unknown key, bad value, bad range)
/// instead of stopping at the first.
ParseResult parse_config_text(const std::string& text);

/// Reads the file and parses it; missing file is reported as a diagnostic.
ParseResult parse_config_file(const std::string& path);

/// The canonical INI rendering of a config; parse(render(c)) == c.
std::string render_config(const RunConfig& cfg);

/// FNV-1a hash of the canonical rendering, as a hex string.
std::string config_hash(const RunConfig& cfg);

}  // namespace reglap
