// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "iga/demos.hpp"
#include "iga/error.hpp"
#include "iga/geometries.hpp"

namespace iga {

double CahnHilliardProblem::mu(double c) const {
  if (logarithmic) return std::log(c / (1 - c)) / (2 * theta) + 1 - 2 * c;
  return c * c * c - c;
}

double CahnHilliardProblem::dmu(double c) const {
  if (logarithmic) return 1 / (2 * theta * c * (1 - c)) - 2;
  return 3 * c * c - 1;
}

double CahnHilliardProblem::d2mu(double c) const {
  if (logarithmic) return (2 * c - 1) / (2 * theta * c * c * (1 - c) * (1 - c));
  return 6 * c;
}

double CahnHilliardProblem::psi(double c) const {
  if (logarithmic) return (c * std::log(c) + (1 - c) * std::log(1 - c)) / (2 * theta) + c * (1 - c);
  return 0.25 * (c * c - 1) * (c * c - 1);
}

CahnHilliard::CahnHilliard(const TensorSpace& space, const NurbsPatch& patch,
                           const CahnHilliardProblem& problem, int workers)
    : space_(&space), problem_(problem) {
  if (space.dof_per_node() != 1) fail(ErrorCode::kParameter, "cahn-hilliard: scalar space required");
  for (int d = 0; d < space.dim(); ++d)
    if (!space.periodic(d) || space.periodic_continuity(d) < 1)
      fail(ErrorCode::kParameter, "cahn-hilliard: every axis must be periodic with continuity >= 1");
  if (!(problem.mobility > 0) || !(problem.interface > 0))
    fail(ErrorCode::kParameter, "cahn-hilliard: mobility and interface coefficient must be positive");
  if (problem.logarithmic && !(problem.mean > 0 && problem.mean < 1))
    fail(ErrorCode::kParameter, "cahn-hilliard: mean concentration must lie in (0, 1)");
  partition_ = make_partition(space, workers);
  assembler_ = std::make_unique<Assembler>(space, patch, partition_, 2);
  U_ = PartitionedVector(partition_, 1);
  V_ = PartitionedVector(partition_, 1);
  R_ = PartitionedVector(partition_, 1);
}

CahnHilliard::~CahnHilliard() = default;

std::vector<double> CahnHilliard::initial_state() const {
  std::mt19937 rng(problem_.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<size_t>(space_->dof_count()));
  for (double& v : c) v = problem_.mean + problem_.perturbation * u(rng);
  return c;
}

void CahnHilliard::residual(std::span<const double> U, std::span<const double> Udot,
                            std::span<double> R) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  std::copy(Udot.begin(), Udot.end(), V_.values().begin());
  PartitionedVector* in[] = {&U_, &V_};
  const double M = problem_.mobility, L = problem_.interface;
  const int dim = space_->dim();
  assembler_->form_vector(in, [&](const PointData& pd, std::span<double> f) {
    const double c = pd.value(0), cdot = pd.value(1), lap = pd.laplacian(0);
    const Vec3 g = pd.grad(0);
    const double dmu = problem_.dmu(c);
    for (int A = 0; A < pd.nen(); ++A) {
      double gg = 0.0, lapA = 0.0;
      for (int i = 0; i < dim; ++i) {
        gg += pd.shape.g(A, i) * g[i];
        lapA += pd.shape.h(A, i, i);
      }
      f[static_cast<size_t>(A)] = pd.shape.v(A) * cdot + M * dmu * gg + M * L * lapA * lap;
    }
  }, R_);
  std::copy(R_.values().begin(), R_.values().end(), R.begin());
}

void CahnHilliard::jacobian(std::span<const double> U, std::span<const double> Udot,
                            double shift_u, double shift_udot, CsrMatrix& K) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  std::copy(Udot.begin(), Udot.end(), V_.values().begin());
  PartitionedVector* in[] = {&U_, &V_};
  const double M = problem_.mobility, L = problem_.interface;
  const int dim = space_->dim();
  assembler_->form_matrix(in, [&](const PointData& pd, std::span<double> k) {
    const int n = pd.nen();
    const double c = pd.value(0);
    const Vec3 g = pd.grad(0);
    const double dmu = problem_.dmu(c), d2mu = problem_.d2mu(c);
    thread_local std::vector<double> lap, ggc;
    lap.resize(static_cast<size_t>(n));
    ggc.resize(static_cast<size_t>(n));
    for (int A = 0; A < n; ++A) {
      lap[static_cast<size_t>(A)] = 0.0;
      ggc[static_cast<size_t>(A)] = 0.0;
      for (int i = 0; i < dim; ++i) {
        lap[static_cast<size_t>(A)] += pd.shape.h(A, i, i);
        ggc[static_cast<size_t>(A)] += pd.shape.g(A, i) * g[i];
      }
    }
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B) {
        double gg = 0.0;
        for (int i = 0; i < dim; ++i) gg += pd.shape.g(A, i) * pd.shape.g(B, i);
        const double du = M * d2mu * pd.shape.v(B) * ggc[static_cast<size_t>(A)] + M * dmu * gg + M * L * lap[static_cast<size_t>(A)] * lap[static_cast<size_t>(B)];
        k[static_cast<size_t>(A * n + B)] = shift_udot * pd.shape.v(A) * pd.shape.v(B) + shift_u * du;
      }
  }, K);
}

double CahnHilliard::mass(std::span<const double> U) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  PartitionedVector* in[] = {&U_};
  return assembler_->integrate(in, [](const PointData& pd) { return pd.value(0); });
}

double CahnHilliard::energy(std::span<const double> U) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  PartitionedVector* in[] = {&U_};
  const int dim = space_->dim();
  return assembler_->integrate(in, [&](const PointData& pd) {
    const Vec3 g = pd.grad(0);
    double gg = 0.0;
    for (int i = 0; i < dim; ++i) gg += g[i] * g[i];
    return problem_.psi(pd.value(0)) + 0.5 * problem_.interface * gg;
  });
}

CahnHilliardResult cahn_hilliard_run(const CahnHilliardProblem& problem,
                                     const CahnHilliardOptions& opt, const StepObserver& observer) {
  if (opt.dim < 1 || opt.dim > kMaxDim || opt.steps < 0)
    fail(ErrorCode::kParameter, "cahn-hilliard: invalid options");
  CahnHilliardResult res;
  std::vector<AxisSpec> axes(static_cast<size_t>(opt.dim),
                             AxisSpec{opt.elements, opt.degree, opt.continuity, 0.0, 1.0, true,
                                      opt.continuity});
  res.space = TensorSpace::build(axes, 1);
  const std::vector<double> lo(static_cast<size_t>(opt.dim), 0.0), hi(static_cast<size_t>(opt.dim), 1.0);
  res.patch = box_patch(res.space, lo, hi);
  CahnHilliard model(res.space, res.patch, problem, opt.workers);
  if (!(opt.dt > 0)) fail(ErrorCode::kParameter, "cahn-hilliard: dt must be positive");
  const AlphaParams params = alpha_parameters(opt.rho_inf, opt.dt);

  TimeState state{model.initial_state(), std::vector<double>(static_cast<size_t>(res.space.dof_count()), 0.0), 0.0};
  CsrMatrix K = model.matrix();
  const std::vector<std::vector<int>> blocks =
      Ilu0BlockJacobi::owned_blocks(model.partition(), 1);

  const TimeResidualFn R = [&](double, std::span<const double> U, std::span<const double> V,
                               std::span<double> r) { model.residual(U, V, r); };
  const TimeJacobianSolveFn J = [&](double, std::span<const double> U, std::span<const double> V,
                                    double su, double sv, std::span<const double> r,
                                    std::span<double> dv) {
    model.jacobian(U, V, su, sv, K);
    WorkerTeam& team = model.assembler().team();
    if (!opt.precondition) return solve_sparse(K, nullptr, r, dv, opt.newton.linear, &team).iterations;
    const Ilu0BlockJacobi M(K, blocks);
    return solve_sparse(K, &M, r, dv, opt.newton.linear, &team).iterations;
  };

  CahnHilliardStep s0{0, 0.0, model.mass(state.U), model.energy(state.U), 0, 0, 0.0};
  res.monitors.push_back(s0);
  if (observer) observer(s0, state.U);
  const auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= opt.steps; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const NewtonResult nr = galpha_step(R, J, state, params, opt.newton);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.log.record(n, nr);
    if (!nr.converged && !opt.newton.fixed_iterations) {
      std::ostringstream os;
      os << "cahn-hilliard: Newton failed at step " << n << " (t = " << state.t << ") after "
         << nr.iterations << " iterations, residual " << nr.residuals.back() << " from "
         << nr.residuals.front();
      fail(ErrorCode::kConvergence, os.str());
    }
    CahnHilliardStep row{n, state.t, model.mass(state.U), model.energy(state.U), nr.iterations,
                         nr.linear_iterations, secs};
    res.monitors.push_back(row);
    if (observer) observer(row, state.U);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.c = std::move(state.U);
  return res;
}

void write_monitors_csv(const std::string& path, std::span<const CahnHilliardStep> rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << "step,time,mass,energy,newton_iterations,linear_iterations,seconds\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows)
    out << r.step << ',' << r.t << ',' << r.mass << ',' << r.energy << ',' << r.newton << ','
        << r.linear << ',' << r.seconds << '\n';
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace iga
