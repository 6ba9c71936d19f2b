// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "config.hpp"
#include "verification.hpp"

namespace reglap {

/// Assembled problem objects for one run configuration.
struct BuiltProblem {
  Grid grid;
  SolverConfig solver;
  ProblemData data;
  Normalization normalization;
  double delta;  // boundary-layer width used by the verification harness
};

BuiltProblem build_problem(const RunConfig& cfg);

struct RunOutcome {
  int exit_code = 0;       // 0 ok, 2 config, 3 solver, 4 checks failed,
                           // 5 io, 6 numerical
  std::string summary;     // human-readable lines for stdout
  std::string error;       // one-line machine-parsable error ("" if none)
};

/// Executes one of: assemble, solve, sweep, verify, green, constants.
/// Artifacts are written under cfg.output.dir.
RunOutcome run_command(const std::string& verb, const RunConfig& cfg);

/// The full verification report for a config (used by `verify`).
VerificationReport run_verification(const RunConfig& cfg);

}  // namespace reglap
