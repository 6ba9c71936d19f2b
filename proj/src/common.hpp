// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace reglap {

enum class ErrorKind {
  config,    // invalid configuration or input file
  input,     // invalid run-time argument / data
  solver,    // time stepper or nonlinear solve failed
  numerical, // quadrature or extrapolation failed to converge
  io,        // file system failure
};

/// Single exception type for the library; `kind` maps onto process exit
/// codes at the CLI boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace reglap
