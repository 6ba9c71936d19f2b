/*
 * Copyright 2026 The reglap authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the reglap solver and verification harness.  All state
 * lives behind the opaque session handle; every entry point returns a
 * status code, with the detailed message available from
 * reglap_session_error().
 */

#ifndef REGLAP_H
#define REGLAP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum reglap_status {
  REGLAP_OK = 0,
  REGLAP_ERR_CONFIG = 2,    /* invalid configuration or input data */
  REGLAP_ERR_SOLVER = 3,    /* time stepper / nonlinear solve failure */
  REGLAP_ERR_VERIFY = 4,    /* verification ran; one or more checks failed */
  REGLAP_ERR_IO = 5,        /* file system failure */
  REGLAP_ERR_NUMERICAL = 6, /* quadrature or extrapolation non-convergence */
  REGLAP_ERR_ARGUMENT = 7   /* null handle or bad call argument */
} reglap_status;

typedef struct reglap_session reglap_session;

/* Library version string, e.g. "0.1.0". */
const char* reglap_version(void);

/* Creates a session from an INI config file (or from config text held in
 * memory).  On configuration errors the session is NOT created and, when
 * `error_buf` is provided, it receives a newline-separated list of every
 * diagnostic. */
reglap_status reglap_session_open(const char* config_path,
                                  reglap_session** out_session,
                                  char* error_buf, size_t error_buf_len);
reglap_status reglap_session_open_text(const char* config_text,
                                       reglap_session** out_session,
                                       char* error_buf, size_t error_buf_len);

void reglap_session_close(reglap_session* session);

/* Overrides the [output] dir of the session's config. */
reglap_status reglap_session_set_output_dir(reglap_session* session,
                                            const char* dir);

/* Runs one verb: "assemble", "solve", "sweep", "verify", "green",
 * "constants".  Artifacts are written to the configured output directory.
 * Returns REGLAP_OK, or REGLAP_ERR_VERIFY when `verify` completed with
 * failing checks, or the error class of the failure. */
reglap_status reglap_session_run(reglap_session* session, const char* verb);

/* Human-readable output of the last run ("" before any run). */
const char* reglap_session_summary(const reglap_session* session);

/* One-line machine-parsable error of the last failed call ("" if none). */
const char* reglap_session_error(const reglap_session* session);

/* Normalization constant of the singular-integral kernel; form is "paper"
 * or "standard". */
reglap_status reglap_normalization_constant(int dimension, double s,
                                            const char* form, double* out);

/* The boundary-weight constant of the fractional integration-by-parts
 * formula, for sigma = 2s-1 in (0,1). */
reglap_status reglap_normal_derivative_constant(double sigma, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REGLAP_H */
