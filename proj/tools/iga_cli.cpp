// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// iga run <poisson|cahn-hilliard|hyperelastic|bench> [options]

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "iga/iga.h"

int main(int argc, char** argv) {
  CLI::App app{"Isogeometric analysis reference problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(iga_version()));

  iga_run_options o;
  iga_run_options_init(&o);
  std::string problem, patch, geometry, out;
  bool periodic = false, dump = false, fixed = false;

  CLI::App* run = app.add_subcommand("run", "Run a reference problem");
  run->add_option("problem", problem, "poisson, cahn-hilliard, hyperelastic or bench")
      ->required()
      ->check(CLI::IsMember({"poisson", "cahn-hilliard", "hyperelastic", "bench"}));
  run->add_option("-N,--elements", o.elements, "Elements per axis");
  run->add_option("-p,--degree", o.degree, "Polynomial degree");
  run->add_option("-c,--continuity", o.continuity, "Interior continuity");
  run->add_flag("--periodic", periodic, "Periodic space (cahn-hilliard is always periodic)");
  run->add_option("--rho-inf", o.rho_inf, "Generalized-alpha spectral radius")->check(CLI::Range(0.0, 1.0));
  run->add_option("--dt", o.dt, "Time step");
  run->add_option("--steps", o.steps, "Time steps, load steps or benchmark steps");
  run->add_option("--workers", o.workers, "Worker threads (bench: largest count)")->check(CLI::PositiveNumber);
  run->add_option("--patch", patch, "Patch file (poisson)");
  run->add_option("--geometry", geometry, "Poisson geometry: square or annulus");
  run->add_option("--out", out, "Output directory for VTK, CSV and matrix files");
  run->add_flag("--dump-matrix", dump, "Write the system matrix in Matrix Market format");
  run->add_flag("--fixed-iters", fixed, "Fixed iteration budget (2 Newton x 30 GMRES)");
  run->add_option("--samples", o.samples, "VTK lattice points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return IGA_ERR_PARAMETER;
  }

  o.periodic = periodic;
  o.dump_matrix = dump;
  o.fixed_iterations = fixed;
  if (!patch.empty()) o.patch = patch.c_str();
  if (!geometry.empty()) o.geometry = geometry.c_str();
  if (!out.empty()) o.out_dir = out.c_str();

  iga_report* report = nullptr;
  const int status = iga_run(problem.c_str(), &o, &report);
  if (status != IGA_OK) {
    std::fprintf(stderr, "iga: %s error: %s\n", iga_status_name(status), iga_last_error());
    return status;
  }
  std::fputs(iga_report_summary(report), stdout);
  for (size_t i = 0; i < iga_report_file_count(report); ++i)
    std::printf("wrote %s\n", iga_report_file(report, i));
  iga_report_free(report);
  return 0;
}
