// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/error.hpp"

#include <iostream>
#include <mutex>

namespace iga {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kIndex: return "index";
    case ErrorCode::kSingularMapping: return "singular-mapping";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kAssembly: return "assembly";
    case ErrorCode::kPreallocation: return "preallocation";
    case ErrorCode::kConvergence: return "convergence";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

namespace {

std::mutex warn_mutex;
std::function<void(const std::string&)> warn_handler = [](const std::string& m) {
  std::cerr << "iga: warning: " << m << '\n';
};

}  // namespace

void set_warning_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard lock(warn_mutex);
  warn_handler = std::move(handler);
}

void warn(const std::string& message) {
  std::lock_guard lock(warn_mutex);
  if (warn_handler) warn_handler(message);
}

}  // namespace iga
