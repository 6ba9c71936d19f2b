// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end; talks to the solver library exclusively through
// the C interface in reglap.h.

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "reglap.h"

namespace {

int run_verb(const std::string& verb, const std::string& config_path,
             const std::string& out_dir) {
  char errbuf[8192];
  reglap_session* session = nullptr;
  reglap_status status =
      reglap_session_open(config_path.c_str(), &session, errbuf,
                          sizeof errbuf);
  if (status != REGLAP_OK) {
    std::fprintf(stderr, "reglap: error: config: invalid configuration\n%s\n",
                 errbuf);
    return status;
  }
  if (!out_dir.empty()) reglap_session_set_output_dir(session, out_dir.c_str());

  status = reglap_session_run(session, verb.c_str());
  const char* summary = reglap_session_summary(session);
  if (summary && summary[0]) std::fputs(summary, stdout);
  if (status != REGLAP_OK) {
    const char* err = reglap_session_error(session);
    if (err && err[0]) std::fprintf(stderr, "%s\n", err);
  }
  reglap_session_close(session);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "reglap - nonlocal degenerate convection-diffusion solver and "
      "property-check harness"};
  app.set_version_flag("--version", reglap_version());
  app.require_subcommand(1);

  const std::vector<std::string> verbs = {"assemble", "solve",     "sweep",
                                          "verify",   "green",     "constants"};
  const std::vector<std::string> help = {
      "write the dense kernel weight matrix",
      "run one viscous solve and write the trajectory",
      "run the vanishing-viscosity continuation and the Cauchy table",
      "run the verification suite and write report.json",
      "run the integration-by-parts refinement study",
      "print the model and operator constants"};

  struct Args {
    std::string config;
    std::string out;
  };
  std::vector<Args> args(verbs.size());
  for (std::size_t i = 0; i < verbs.size(); ++i) {
    CLI::App* sub = app.add_subcommand(verbs[i], help[i]);
    sub->add_option("--config", args[i].config, "INI configuration file")
        ->required();
    sub->add_option("--out", args[i].out, "output directory override");
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < verbs.size(); ++i) {
    if (app.got_subcommand(verbs[i]))
      return run_verb(verbs[i], args[i].config, args[i].out);
  }
  return 1;
}
