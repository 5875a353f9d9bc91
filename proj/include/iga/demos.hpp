// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Reference applications: Poisson, Cahn-Hilliard, Neo-Hookean
// hyperelasticity and the fixed-budget scaling benchmark.

#pragma once

#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "iga/assembly.hpp"
#include "iga/solvers.hpp"

namespace iga {

using ScalarField = std::function<double(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

/// Cartesian position of the control point carrying a node.
Vec3 node_point(const TensorSpace& space, const NurbsPatch& patch, int node);

/// Relative error of the assembled Jacobian action J v against a central
/// difference of the residual along v.
double jacobian_fd_error(const ResidualFn& residual, const CsrMatrix& J,
                         std::span<const double> U, std::span<const double> v,
                         double h = 1e-6);

// ---------------------------------------------------------------- Poisson

/// -lap u = f with u = g on every open face.
struct PoissonProblem {
  ScalarField source;
  ScalarField dirichlet;
  ScalarField exact;        ///< optional, enables the error report
  VectorField exact_grad;   ///< optional, enables the H1 error
};

struct PoissonOptions {
  int workers = 1;
  GmresConfig gmres;
};

struct PoissonResult {
  std::vector<double> u;
  CsrMatrix K;  ///< after boundary elimination
  std::vector<double> F;
  GmresResult solve;
  double l2_error = -1.0;
  double h1_error = -1.0;  ///< H1 seminorm of the error
};

/// Boundary values come from g at the control points, which is exact for
/// data in the space. Throws Error(kConvergence) if GMRES fails.
PoissonResult poisson_run(const TensorSpace& space, const NurbsPatch& patch,
                          const PoissonProblem& problem, const PoissonOptions& options = {});

/// sin(pi x) sin(pi y) on the unit square.
PoissonProblem poisson_sine_problem();
/// (r^2 - 1)(r^2 - 4) x y, vanishing on the quarter-annulus boundary.
PoissonProblem poisson_annulus_problem();

// ----------------------------------------------------------- Cahn-Hilliard

struct CahnHilliardProblem {
  double mobility = 1.0;
  /// Coefficient of the gradient energy (squared interface width).
  double interface = 1.0 / 3000.0;
  bool logarithmic = false;
  double theta = 1.5;  ///< log potential: ratio of critical to absolute temperature
  double mean = 0.63;
  double perturbation = 0.05;
  unsigned seed = 2026;

  double mu(double c) const;
  double dmu(double c) const;
  double d2mu(double c) const;
  double psi(double c) const;
};

/// Semi-discrete residual R(c, cdot) = int w cdot + grad w . M dmu grad c
/// + M interface lap w lap c on a fully periodic space.
class CahnHilliard {
 public:
  /// Throws Error(kParameter) unless every axis is periodic with
  /// continuity >= 1 and the problem constants are admissible.
  CahnHilliard(const TensorSpace& space, const NurbsPatch& patch,
               const CahnHilliardProblem& problem, int workers);
  ~CahnHilliard();

  const TensorSpace& space() const { return *space_; }
  const Partition& partition() const { return partition_; }
  Assembler& assembler() { return *assembler_; }

  std::vector<double> initial_state() const;
  void residual(std::span<const double> U, std::span<const double> Udot, std::span<double> R);
  /// shift_udot dR/dcdot + shift_u dR/dc
  void jacobian(std::span<const double> U, std::span<const double> Udot, double shift_u,
                double shift_udot, CsrMatrix& K);
  CsrMatrix matrix() const { return preallocate(*space_); }
  double mass(std::span<const double> U);
  double energy(std::span<const double> U);

 private:
  const TensorSpace* space_;
  CahnHilliardProblem problem_;
  Partition partition_;
  std::unique_ptr<Assembler> assembler_;
  PartitionedVector U_, V_, R_;
};

struct CahnHilliardOptions {
  int elements = 64;
  int degree = 2;
  int continuity = 1;
  int dim = 2;
  double dt = 1e-5;
  int steps = 50;
  double rho_inf = 0.5;
  int workers = 1;
  NewtonConfig newton;
  /// Preconditioner: block-Jacobi ILU(0) with one block per worker.
  bool precondition = true;
};

struct CahnHilliardStep {
  int step = 0;
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  int newton = 0;
  int linear = 0;
  double seconds = 0.0;
};

struct CahnHilliardResult {
  TensorSpace space;
  NurbsPatch patch;
  std::vector<double> c;
  std::vector<CahnHilliardStep> monitors;  ///< [0] is the initial state
  ConvergenceLog log;
  double seconds = 0.0;
};

using StepObserver = std::function<void(const CahnHilliardStep&, std::span<const double>)>;

/// Unit square (cube) with a fully periodic space. Throws Error(kConvergence)
/// naming the step if Newton fails (unless fixed iterations are requested).
CahnHilliardResult cahn_hilliard_run(const CahnHilliardProblem& problem,
                                     const CahnHilliardOptions& options,
                                     const StepObserver& observer = {});

void write_monitors_csv(const std::string& path, std::span<const CahnHilliardStep> rows);

// ----------------------------------------------------------- hyperelastic

struct HyperelasticProblem {
  double lambda = 0.0;
  double mu = 0.0;
  /// Prescribed displacement of the left face (x = lo) at full load; the
  /// right face is held at `right_displacement`.
  Vec3 left_displacement{-0.2, 0.0, 0.0};
  Vec3 right_displacement{0.0, 0.0, 0.0};
  int load_steps = 15;

  /// Lame constants from Young's modulus and Poisson's ratio.
  static HyperelasticProblem from_young(double E, double nu);
};

/// Total-Lagrangian Neo-Hookean residual int grad w : P on the reference
/// patch with S = lambda/2 (J^2 - 1) C^-1 + mu (I - C^-1).
class Hyperelastic {
 public:
  /// Throws Error(kParameter) unless mu > 0, lambda > -2 mu / 3 and the
  /// space carries one component per dimension.
  Hyperelastic(const TensorSpace& space, const NurbsPatch& patch,
               const HyperelasticProblem& problem, int workers);
  ~Hyperelastic();

  const TensorSpace& space() const { return *space_; }
  const Partition& partition() const { return partition_; }

  void residual(std::span<const double> U, std::span<double> R);
  void tangent(std::span<const double> U, CsrMatrix& K);
  /// Linear elasticity stiffness with the same Lame constants.
  void linear_stiffness(CsrMatrix& K);
  double strain_energy(std::span<const double> U);
  CsrMatrix matrix() const { return preallocate(*space_); }

  /// Dofs on the left and right faces with values at load fraction s.
  std::vector<DirichletValue> boundary(double s) const;

 private:
  const TensorSpace* space_;
  const NurbsPatch* patch_;
  HyperelasticProblem problem_;
  Partition partition_;
  std::unique_ptr<Assembler> assembler_;
  PartitionedVector U_, R_;
};

struct HyperelasticOptions {
  int elements = 8;
  int degree = 2;
  int continuity = 1;
  int workers = 1;
  NewtonConfig newton;
};

struct LoadStep {
  double fraction = 0.0;
  int newton = 0;
  int linear = 0;
  double residual = 0.0;
  double energy = 0.0;
  bool halved = false;
};

struct HyperelasticResult {
  TensorSpace space;
  NurbsPatch patch;
  std::vector<double> u;
  std::vector<LoadStep> steps;
  ConvergenceLog log;
  double initial_residual = 0.0;  ///< ||R(0)|| before loading
};

/// Unit square, left face displaced over the load steps. A failed step is
/// retried as two half increments; a second failure throws
/// Error(kConvergence).
HyperelasticResult neohookean_run(const HyperelasticProblem& problem,
                                  const HyperelasticOptions& options);

/// One linear-elasticity solve with the full-load boundary data.
std::vector<double> linear_elastic_solve(Hyperelastic& model, const GmresConfig& gmres);

// -------------------------------------------------------------- benchmark

struct BenchOptions {
  int elements = 64;
  int degree = 2;
  int dim = 2;
  std::vector<int> workers{1, 2, 4, 8};
  int steps = 10;
  int newton = 2;
  int gmres = 30;
  double dt = 1e-5;
};

struct BenchRow {
  int workers = 1;
  double seconds = 0.0;
  double per_step = 0.0;
  double speedup = 1.0;
  double efficiency = 1.0;
};

/// Fixed-budget Cahn-Hilliard runs (steps x Newton x GMRES iterations,
/// block-Jacobi ILU(0) with one block per worker). Efficiency is relative
/// to the first worker count scaled to one worker.
std::vector<BenchRow> scaling_bench(const BenchOptions& options);
std::string format_bench_table(const BenchOptions& options, std::span<const BenchRow> rows);

}  // namespace iga
