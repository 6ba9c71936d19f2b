// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "config.hpp"
#include "runner.hpp"

using namespace reglap;

TEST_CASE("minimal config fills documented defaults") {
  const ParseResult parsed = parse_config_text("[problem]\nn_cells = 64\n");
  REQUIRE(parsed.ok());
  CHECK(parsed.config.problem.n_cells == 64);
  CHECK(parsed.config.problem.s == 0.75);
  CHECK(parsed.config.solver.eps == 1e-2);
  CHECK(parsed.config.solver.cfl == 0.45);
  CHECK(parsed.config.output.dir == "out");
}

TEST_CASE("out-of-range s names the section, key and interval") {
  const ParseResult parsed = parse_config_text("[problem]\ns = 1.5\n");
  REQUIRE_FALSE(parsed.ok());
  const std::string msg = parsed.errors[0].to_string();
  CHECK(msg.find("[problem]") != std::string::npos);
  CHECK(msg.find("s") != std::string::npos);
  CHECK(msg.find("(0,1)") != std::string::npos);
}

TEST_CASE("eps_list enables sweep mode") {
  const ParseResult parsed =
      parse_config_text("[solver]\neps_list = 0.1,0.05,0.025\n");
  REQUIRE(parsed.ok());
  CHECK(parsed.config.solver.eps_list ==
        std::vector<double>{0.1, 0.05, 0.025});
}

TEST_CASE("all errors are collected, not just the first") {
  const ParseResult parsed = parse_config_text(
      "[problem]\ns = 2.0\nn_cells = 1\nbogus = 3\n[solver]\ncfl = 7\n");
  CHECK(parsed.errors.size() == 4);
}

TEST_CASE("unknown sections and malformed lines are reported with lines") {
  const ParseResult parsed =
      parse_config_text("[nope]\nx = 1\n[problem]\njust text\n");
  REQUIRE_FALSE(parsed.ok());
  bool unknown_section = false, malformed = false;
  for (const auto& err : parsed.errors) {
    if (err.message.find("unknown section") != std::string::npos)
      unknown_section = true;
    if (err.message.find("key = value") != std::string::npos) {
      malformed = true;
      CHECK(err.line == 4);
    }
  }
  CHECK(unknown_section);
  CHECK(malformed);
}

TEST_CASE("canonical rendering round-trips") {
  RunConfig defaults;
  const std::string text = render_config(defaults);
  const ParseResult parsed = parse_config_text(text);
  REQUIRE(parsed.ok());
  CHECK(render_config(parsed.config) == text);
  CHECK(config_hash(parsed.config) == config_hash(defaults));

  RunConfig tweaked = defaults;
  tweaked.problem.s = 0.8;
  CHECK(config_hash(tweaked) != config_hash(defaults));
}

TEST_CASE("missing config file is a diagnostic, not a crash") {
  const ParseResult parsed = parse_config_file("/nonexistent/path.ini");
  REQUIRE_FALSE(parsed.ok());
  CHECK(parsed.errors[0].message.find("cannot open") != std::string::npos);
}

TEST_CASE("build_problem validates model specs") {
  RunConfig cfg;
  cfg.problem.flux = "unknown_flux";
  CHECK_THROWS_AS(build_problem(cfg), Error);
  cfg.problem.flux = "advection:0.5";
  cfg.problem.u0 = "riemann:1,0";  // missing x0
  CHECK_THROWS_AS(build_problem(cfg), Error);
  cfg.problem.u0 = "sine:0.5,1,0.5";
  CHECK_NOTHROW(build_problem(cfg));
}

TEST_CASE("initial data construction") {
  RunConfig cfg;
  cfg.problem.n_cells = 10;
  cfg.problem.u0 = "riemann:1,0,0.5";
  const BuiltProblem built = build_problem(cfg);
  CHECK(built.data.u0[0] == 1.0);
  CHECK(built.data.u0[9] == 0.0);
  CHECK(built.data.u0[4] == 1.0);  // face at 0.5 splits cells 4|5 exactly
  CHECK(built.data.u0[5] == 0.0);

  RunConfig half = cfg;
  half.problem.u0 = "riemann:1,0,0.55";  // jump mid-cell: exact mean
  const BuiltProblem built2 = build_problem(half);
  CHECK(built2.data.u0[5] == doctest::Approx(0.5));
}

TEST_CASE("unknown verb yields the config exit code") {
  RunConfig cfg;
  cfg.output.dir = "/tmp/reglap_test_unknown_verb";
  const RunOutcome outcome = run_command("fly", cfg);
  CHECK(outcome.exit_code == 2);
  CHECK(outcome.error.find("reglap: error:") == 0);
}

TEST_CASE("unknown verify check names are config errors") {
  RunConfig cfg;
  cfg.verify.checks = {"operator", "bogus_check"};
  cfg.output.dir = "/tmp/reglap_test_badcheck";
  const RunOutcome outcome = run_command("verify", cfg);
  CHECK(outcome.exit_code == 2);
  CHECK(outcome.error.find("bogus_check") != std::string::npos);
}
