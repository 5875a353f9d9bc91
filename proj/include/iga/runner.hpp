// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-level drivers shared by the C API and the command-line tool.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace iga {

/// Negative numeric fields select the problem default.
struct RunOptions {
  int elements = -1;
  int degree = -1;
  int continuity = -1;
  bool periodic = false;
  double rho_inf = -1.0;
  double dt = -1.0;
  int steps = -1;
  int workers = 1;
  std::string patch;     ///< patch file (poisson only)
  std::string geometry;  ///< poisson: "square" (default) or "annulus"
  std::string out;       ///< output directory; empty writes nothing
  bool dump_matrix = false;
  bool fixed_iterations = false;
  int samples = 33;      ///< VTK lattice points per axis
};

struct RunReport {
  std::string problem;
  std::map<std::string, double> values;
  std::vector<std::string> files;
  std::string summary;
};

/// problem is one of poisson, cahn-hilliard, hyperelastic, bench.
/// Throws iga::Error.
RunReport run_problem(const std::string& problem, const RunOptions& options);

}  // namespace iga
