// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <sstream>

#include "iga/demos.hpp"
#include "iga/error.hpp"

namespace iga {

std::vector<BenchRow> scaling_bench(const BenchOptions& opt) {
  if (opt.workers.empty()) fail(ErrorCode::kParameter, "bench: no worker counts");
  std::vector<BenchRow> rows;
  for (int w : opt.workers) {
    CahnHilliardOptions ch;
    ch.elements = opt.elements;
    ch.degree = opt.degree;
    ch.continuity = opt.degree - 1;
    ch.dim = opt.dim;
    ch.dt = opt.dt;
    ch.steps = opt.steps;
    ch.workers = w;
    ch.newton.fixed_iterations = true;
    ch.newton.max_iterations = opt.newton;
    ch.newton.linear.fixed_iterations = true;
    ch.newton.linear.max_iterations = opt.gmres;
    ch.newton.linear.restart = opt.gmres;
    const CahnHilliardResult r = cahn_hilliard_run(CahnHilliardProblem{}, ch);
    BenchRow row;
    row.workers = w;
    row.seconds = r.seconds;
    row.per_step = opt.steps > 0 ? r.seconds / opt.steps : 0.0;
    rows.push_back(row);
  }
  const BenchRow& base = rows.front();
  for (BenchRow& row : rows) {
    row.speedup = base.seconds / row.seconds;
    row.efficiency = row.speedup * base.workers / row.workers;
  }
  return rows;
}

std::string format_bench_table(const BenchOptions& opt, std::span<const BenchRow> rows) {
  std::ostringstream os;
  os << "Cahn-Hilliard " << opt.dim << "D, " << opt.elements << "^" << opt.dim << " elements, p="
     << opt.degree << ", " << opt.steps << " steps x " << opt.newton << " Newton x " << opt.gmres
     << " GMRES, block-Jacobi ILU(0)\n";
  char line[128];
  std::snprintf(line, sizeof line, "%8s %12s %12s %10s %11s\n", "workers", "time (s)",
                "per step", "speedup", "efficiency");
  os << line;
  for (const BenchRow& r : rows) {
    std::snprintf(line, sizeof line, "%8d %12.4f %12.5f %10.3f %10.1f%%\n", r.workers, r.seconds,
                  r.per_step, r.speedup, 100.0 * r.efficiency);
    os << line;
  }
  return os.str();
}

}  // namespace iga
