// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "iga/demos.hpp"
#include "iga/error.hpp"
#include "iga/geometries.hpp"
#include "iga/io.hpp"

namespace iga {

namespace {

int pick(int v, int fallback) { return v >= 0 ? v : fallback; }
double pick(double v, double fallback) { return v >= 0 ? v : fallback; }

class Output {
 public:
  Output(const RunOptions& opt, RunReport& rep) : dir_(opt.out), rep_(rep) {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create output directory " + dir_ + ": " + ec.message());
  }
  bool enabled() const { return !dir_.empty(); }
  std::string path(const std::string& name) {
    const std::string p = (std::filesystem::path(dir_) / name).string();
    rep_.files.push_back(p);
    return p;
  }

 private:
  std::string dir_;
  RunReport& rep_;
};

RunReport run_poisson(const RunOptions& opt) {
  if (opt.periodic) fail(ErrorCode::kParameter, "poisson: periodic spaces are not supported");
  RunReport rep;
  rep.problem = "poisson";
  const int N = pick(opt.elements, 16), p = pick(opt.degree, 2), c = pick(opt.continuity, p - 1);
  NurbsPatch patch;
  TensorSpace space;
  PoissonProblem problem;
  std::string geometry = opt.geometry.empty() ? "square" : opt.geometry;
  if (!opt.patch.empty()) {
    geometry = "file";
    patch = read_patch_file(opt.patch);
    space = TensorSpace::from_patch(patch, 1);
    problem.source = [](const Vec3&) { return 1.0; };
    problem.dirichlet = [](const Vec3&) { return 0.0; };
  } else if (geometry == "square") {
    const AxisSpec ax{N, p, c};
    const std::vector<AxisSpec> axes{ax, ax};
    space = TensorSpace::build(axes, 1);
    patch = box_patch(space, std::vector<double>{0, 0}, std::vector<double>{1, 1});
    problem = poisson_sine_problem();
  } else if (geometry == "annulus") {
    if (p != 2) fail(ErrorCode::kParameter, "poisson: the annulus geometry is quadratic (-p 2)");
    patch = quarter_annulus(N, N);
    space = TensorSpace::from_patch(patch, 1);
    problem = poisson_annulus_problem();
  } else {
    fail(ErrorCode::kParameter, "poisson: unknown geometry '" + geometry + "'");
  }
  PoissonOptions po;
  po.workers = opt.workers;
  const PoissonResult r = poisson_run(space, patch, problem, po);
  rep.values["dofs"] = space.dof_count();
  rep.values["gmres_iterations"] = r.solve.iterations;
  rep.values["residual"] = r.solve.residual;
  std::ostringstream os;
  os << "poisson (" << geometry << "): " << space.dof_count() << " dofs, GMRES "
     << r.solve.iterations << " iterations, residual " << r.solve.residual << "\n";
  if (r.l2_error >= 0) {
    rep.values["l2_error"] = r.l2_error;
    rep.values["h1_error"] = r.h1_error;
    os << "L2 error " << r.l2_error << ", H1 seminorm error " << r.h1_error << "\n";
  }
  Output out(opt, rep);
  if (out.enabled()) {
    write_vtk(out.path("poisson.vtk"), space, patch, r.u, opt.samples, "u");
    if (opt.dump_matrix) {
      r.K.write_matrix_market(out.path("poisson_K.mtx"));
      write_vector(out.path("poisson_F.mtx"), r.F);
    }
  }
  rep.summary = os.str();
  return rep;
}

RunReport run_cahn_hilliard(const RunOptions& opt) {
  RunReport rep;
  rep.problem = "cahn-hilliard";
  CahnHilliardOptions co;
  co.elements = pick(opt.elements, co.elements);
  co.degree = pick(opt.degree, co.degree);
  co.continuity = pick(opt.continuity, co.degree - 1);
  co.rho_inf = pick(opt.rho_inf, co.rho_inf);
  co.dt = pick(opt.dt, co.dt);
  co.steps = pick(opt.steps, co.steps);
  co.workers = opt.workers;
  if (opt.fixed_iterations) {
    co.newton.fixed_iterations = true;
    co.newton.max_iterations = 2;
    co.newton.linear.fixed_iterations = true;
    co.newton.linear.max_iterations = 30;
  }
  Output out(opt, rep);
  const CahnHilliardProblem problem;
  const CahnHilliardResult r = cahn_hilliard_run(problem, co);
  const double m0 = r.monitors.front().mass, m1 = r.monitors.back().mass;
  rep.values["dofs"] = r.space.dof_count();
  rep.values["mass_drift"] = std::abs(m1 - m0) / std::abs(m0);
  rep.values["energy_initial"] = r.monitors.front().energy;
  rep.values["energy_final"] = r.monitors.back().energy;
  rep.values["seconds"] = r.seconds;
  int newton = 0, linear = 0;
  for (const auto& m : r.monitors) {
    newton += m.newton;
    linear += m.linear;
  }
  rep.values["newton_iterations"] = newton;
  rep.values["linear_iterations"] = linear;
  std::ostringstream os;
  os << "cahn-hilliard: " << r.space.dof_count() << " dofs, " << co.steps << " steps of dt "
     << co.dt << " in " << r.seconds << " s\n"
     << "mass drift " << rep.values["mass_drift"] << ", free energy "
     << r.monitors.front().energy << " -> " << r.monitors.back().energy << "\n"
     << "Newton iterations " << newton << ", GMRES iterations " << linear << "\n";
  if (out.enabled()) {
    write_monitors_csv(out.path("cahn_hilliard_monitors.csv"), r.monitors);
    r.log.write_csv(out.path("cahn_hilliard_convergence.csv"));
    write_vtk(out.path("cahn_hilliard.vtk"), r.space, r.patch, r.c, opt.samples, "c");
    if (opt.dump_matrix) {
      CahnHilliard model(r.space, r.patch, problem, co.workers);
      CsrMatrix K = model.matrix();
      const AlphaParams a = alpha_parameters(co.rho_inf, co.dt);
      const std::vector<double> zero(r.c.size(), 0.0);
      model.jacobian(r.c, zero, a.alpha_f * a.gamma * a.dt, a.alpha_m, K);
      K.write_matrix_market(out.path("cahn_hilliard_J.mtx"));
    }
  }
  rep.summary = os.str();
  return rep;
}

RunReport run_hyperelastic(const RunOptions& opt) {
  if (opt.periodic) fail(ErrorCode::kParameter, "hyperelastic: periodic spaces are not supported");
  RunReport rep;
  rep.problem = "hyperelastic";
  HyperelasticProblem problem = HyperelasticProblem::from_young(70.0, 0.35);
  problem.load_steps = pick(opt.steps, 15);
  HyperelasticOptions ho;
  ho.elements = pick(opt.elements, ho.elements);
  ho.degree = pick(opt.degree, ho.degree);
  ho.continuity = pick(opt.continuity, ho.degree - 1);
  ho.workers = opt.workers;
  Output out(opt, rep);
  const HyperelasticResult r = neohookean_run(problem, ho);
  int worst = 0, linear = 0;
  for (const auto& s : r.steps) {
    worst = std::max(worst, s.newton);
    linear += s.linear;
  }
  rep.values["dofs"] = r.space.dof_count();
  rep.values["max_newton_per_step"] = worst;
  rep.values["linear_iterations"] = linear;
  rep.values["strain_energy"] = r.steps.back().energy;
  std::ostringstream os;
  os << "hyperelastic: " << r.space.dof_count() << " dofs, " << r.steps.size()
     << " load steps, at most " << worst << " Newton iterations per step\n"
     << "strain energy " << r.steps.back().energy << "\n";
  if (out.enabled()) {
    std::ofstream csv(out.path("hyperelastic_steps.csv"));
    if (!csv) fail(ErrorCode::kIo, "cannot write load-step monitors");
    csv << "step,load_fraction,newton_iterations,linear_iterations,residual,strain_energy,halved\n";
    csv << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (size_t i = 0; i < r.steps.size(); ++i) {
      const auto& s = r.steps[i];
      csv << i + 1 << ',' << s.fraction << ',' << s.newton << ',' << s.linear << ',' << s.residual
          << ',' << s.energy << ',' << (s.halved ? 1 : 0) << '\n';
    }
    r.log.write_csv(out.path("hyperelastic_convergence.csv"));
    write_vtk(out.path("hyperelastic.vtk"), r.space, r.patch, r.u, opt.samples, "displacement");
    if (opt.dump_matrix) {
      Hyperelastic model(r.space, r.patch, problem, ho.workers);
      CsrMatrix K = model.matrix();
      model.tangent(r.u, K);
      K.write_matrix_market(out.path("hyperelastic_K.mtx"));
    }
  }
  rep.summary = os.str();
  return rep;
}

RunReport run_bench(const RunOptions& opt) {
  RunReport rep;
  rep.problem = "bench";
  BenchOptions bo;
  bo.elements = pick(opt.elements, bo.elements);
  bo.degree = pick(opt.degree, bo.degree);
  bo.steps = pick(opt.steps, bo.steps);
  bo.dt = pick(opt.dt, bo.dt);
  if (opt.workers < 1) fail(ErrorCode::kParameter, "bench: workers must be positive");
  bo.workers.clear();
  for (int w = 1; w < opt.workers; w *= 2) bo.workers.push_back(w);
  bo.workers.push_back(opt.workers);
  const auto rows = scaling_bench(bo);
  rep.values["efficiency"] = rows.back().efficiency;
  rep.values["speedup"] = rows.back().speedup;
  rep.values["workers"] = rows.back().workers;
  rep.summary = format_bench_table(bo, rows);
  Output out(opt, rep);
  if (out.enabled()) {
    std::ofstream csv(out.path("bench.csv"));
    if (!csv) fail(ErrorCode::kIo, "cannot write benchmark table");
    csv << "workers,seconds,per_step,speedup,efficiency\n";
    csv << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows)
      csv << r.workers << ',' << r.seconds << ',' << r.per_step << ',' << r.speedup << ','
          << r.efficiency << '\n';
  }
  return rep;
}

}  // namespace

RunReport run_problem(const std::string& problem, const RunOptions& options) {
  if (options.workers < 1) fail(ErrorCode::kParameter, "workers must be positive");
  if (options.samples < 2) fail(ErrorCode::kParameter, "samples must be at least 2");
  if (problem == "poisson") return run_poisson(options);
  if (problem == "cahn-hilliard") return run_cahn_hilliard(options);
  if (problem == "hyperelastic") return run_hyperelastic(options);
  if (problem == "bench") return run_bench(options);
  fail(ErrorCode::kParameter, "unknown problem '" + problem + "'");
}

}  // namespace iga
