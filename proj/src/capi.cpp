// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "reglap.h"

#include <cstring>
#include <string>

#include "runner.hpp"
#include "special_functions.hpp"

struct reglap_session {
  reglap::RunConfig config;
  std::string summary;
  std::string error;
};

namespace {

void fill_buffer(char* buf, size_t len, const std::string& text) {
  if (!buf || len == 0) return;
  const size_t n = std::min(len - 1, text.size());
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

reglap_status open_from_parse(const reglap::ParseResult& parsed,
                              reglap_session** out_session, char* error_buf,
                              size_t error_buf_len) {
  if (!out_session) return REGLAP_ERR_ARGUMENT;
  *out_session = nullptr;
  if (!parsed.ok()) {
    std::string all;
    for (const auto& diag : parsed.errors) {
      if (!all.empty()) all += "\n";
      all += diag.to_string();
    }
    fill_buffer(error_buf, error_buf_len, all);
    return REGLAP_ERR_CONFIG;
  }
  *out_session = new reglap_session{parsed.config, "", ""};
  return REGLAP_OK;
}

reglap_status map_kind(reglap::ErrorKind kind) {
  switch (kind) {
    case reglap::ErrorKind::config:
    case reglap::ErrorKind::input:
      return REGLAP_ERR_CONFIG;
    case reglap::ErrorKind::solver:
      return REGLAP_ERR_SOLVER;
    case reglap::ErrorKind::io:
      return REGLAP_ERR_IO;
    case reglap::ErrorKind::numerical:
      return REGLAP_ERR_NUMERICAL;
  }
  return REGLAP_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* reglap_version(void) { return "0.1.0"; }

reglap_status reglap_session_open(const char* config_path,
                                  reglap_session** out_session,
                                  char* error_buf, size_t error_buf_len) {
  if (!config_path) return REGLAP_ERR_ARGUMENT;
  return open_from_parse(reglap::parse_config_file(config_path), out_session,
                         error_buf, error_buf_len);
}

reglap_status reglap_session_open_text(const char* config_text,
                                       reglap_session** out_session,
                                       char* error_buf,
                                       size_t error_buf_len) {
  if (!config_text) return REGLAP_ERR_ARGUMENT;
  return open_from_parse(reglap::parse_config_text(config_text), out_session,
                         error_buf, error_buf_len);
}

void reglap_session_close(reglap_session* session) { delete session; }

reglap_status reglap_session_set_output_dir(reglap_session* session,
                                            const char* dir) {
  if (!session || !dir) return REGLAP_ERR_ARGUMENT;
  session->config.output.dir = dir;
  return REGLAP_OK;
}

reglap_status reglap_session_run(reglap_session* session, const char* verb) {
  if (!session || !verb) return REGLAP_ERR_ARGUMENT;
  session->summary.clear();
  session->error.clear();
  reglap::RunOutcome outcome;
  try {
    outcome = reglap::run_command(verb, session->config);
  } catch (const std::exception& e) {
    session->error = std::string("reglap: error: internal: ") + e.what();
    return REGLAP_ERR_SOLVER;
  }
  session->summary = outcome.summary;
  session->error = outcome.error;
  return static_cast<reglap_status>(outcome.exit_code);
}

const char* reglap_session_summary(const reglap_session* session) {
  return session ? session->summary.c_str() : "";
}

const char* reglap_session_error(const reglap_session* session) {
  return session ? session->error.c_str() : "";
}

reglap_status reglap_normalization_constant(int dimension, double s,
                                            const char* form, double* out) {
  if (!out) return REGLAP_ERR_ARGUMENT;
  try {
    const auto f = (form && std::string(form) == "standard")
                       ? reglap::Normalization::standard
                       : reglap::Normalization::paper;
    *out = reglap::normalization_constant(dimension, s, f);
    return REGLAP_OK;
  } catch (const reglap::Error& e) {
    return map_kind(e.kind());
  }
}

reglap_status reglap_normal_derivative_constant(double sigma, double* out) {
  if (!out) return REGLAP_ERR_ARGUMENT;
  try {
    *out = reglap::normal_deriv_constant(sigma);
    return REGLAP_OK;
  } catch (const reglap::Error& e) {
    return map_kind(e.kind());
  }
}

}  // extern "C"
