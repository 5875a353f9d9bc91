// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace iga {

/// Failure categories. The numeric values are shared with the C API status
/// codes and the CLI exit codes.
enum class ErrorCode : int {
  kDomain = 1,         ///< parametric coordinate outside the knot domain
  kParameter = 2,      ///< invalid argument value
  kPrecondition = 3,   ///< input violates an operation precondition
  kDegenerate = 4,     ///< zero denominator / degenerate configuration
  kIndex = 5,          ///< index out of range
  kSingularMapping = 6,
  kContract = 7,       ///< caller asked for data that was not computed
  kAssembly = 8,       ///< non-finite integrand output
  kPreallocation = 9,  ///< insertion outside the preallocated pattern
  kConvergence = 10,
  kParse = 11,
  kIo = 12,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) throw Error(code, what);
}

/// Non-fatal diagnostics (e.g. pivot shifts). The default handler writes
/// "iga: warning: ..." to stderr; pass an empty function to silence.
void set_warning_handler(std::function<void(const std::string&)> handler);
void warn(const std::string& message);

}  // namespace iga
