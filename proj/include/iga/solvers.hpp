// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Restarted GMRES with right preconditioning, block-Jacobi ILU(0), Newton's
// method and the generalized-alpha integrator for first-order systems.

#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "iga/sparse.hpp"

namespace iga {

struct Partition;
class WorkerTeam;

/// y = A x
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct GmresConfig {
  int restart = 30;
  int max_iterations = 1000;
  double rtol = 1e-8;  ///< relative to ||b||
  double atol = 1e-12;
  /// Run exactly max_iterations (benchmark protocol); breakdown still stops.
  bool fixed_iterations = false;
};

struct GmresResult {
  int iterations = 0;
  bool converged = false;
  bool stagnated = false;
  double residual = 0.0;  ///< final true-residual estimate
  std::vector<double> history;  ///< residual norm after each iteration, [0] initial
};

/// Solves A x = b from the initial guess in x. M, if given, applies the
/// right preconditioner z = M^{-1} r. Throws Error(kParameter) on a size
/// mismatch or an invalid configuration.
GmresResult gmres_solve(const LinearOperator& A, std::span<const double> b,
                        std::span<double> x, const LinearOperator* M,
                        const GmresConfig& config);

/// Block-Jacobi preconditioner with ILU(0) on each diagonal block
/// (natural ordering, no fill). Blocks are sorted lists of dofs.
class Ilu0BlockJacobi {
 public:
  Ilu0BlockJacobi(const CsrMatrix& A, std::vector<std::vector<int>> blocks);

  /// One block per worker: the dofs it owns.
  static std::vector<std::vector<int>> owned_blocks(const Partition& partition,
                                                    int dof_per_node);

  void apply(std::span<const double> r, std::span<double> z) const;
  /// Blocks are distributed round-robin over the team's workers.
  void apply(std::span<const double> r, std::span<double> z, WorkerTeam& team) const;

  int block_count() const { return static_cast<int>(blocks_.size()); }
  /// Pivots replaced by the 1e-12 * max|diag| shift.
  int shifted_pivots() const { return shifted_; }

 private:
  struct Block {
    std::vector<int> dofs;
    std::vector<int> row_ptr, col, diag;
    std::vector<double> lu;
  };
  void factor(Block& b);
  void solve_block(const Block& b, std::span<const double> r, std::span<double> z) const;

  std::vector<Block> blocks_;
  int n_ = 0;
  int shifted_ = 0;
};

/// Krylov solve of K x = b with an optional ILU preconditioner, using the
/// team for matrix and preconditioner actions when given.
GmresResult solve_sparse(const CsrMatrix& K, const Ilu0BlockJacobi* M,
                         std::span<const double> b, std::span<double> x,
                         const GmresConfig& config, WorkerTeam* team = nullptr);

struct NewtonConfig {
  int max_iterations = 20;
  double rtol = 1e-8;
  double atol = 1e-12;
  /// Exactly max_iterations updates regardless of the residual (benchmark).
  bool fixed_iterations = false;
  GmresConfig linear;
};

struct NewtonResult {
  bool converged = false;
  int iterations = 0;
  int linear_iterations = 0;
  std::vector<double> residuals;  ///< ||F|| at each iterate, [0] initial
  std::vector<int> linear;        ///< inner iterations per update
};

/// F(U)
using ResidualFn = std::function<void(std::span<const double>, std::span<double>)>;
/// Solves J(U) dU = F approximately (dU enters as zero) and reports the
/// inner iteration count.
using JacobianSolveFn =
    std::function<int(std::span<const double> U, std::span<const double> F, std::span<double> dU)>;

/// Newton's method U <- U - dU until ||F|| <= max(rtol ||F(U0)||, atol).
/// Non-convergence is reported, not thrown.
NewtonResult newton_solve(const ResidualFn& F, const JacobianSolveFn& J,
                          std::span<double> U, const NewtonConfig& config);

struct AlphaParams {
  double rho_inf = 0.5;
  double alpha_m = 0.0;
  double alpha_f = 0.0;
  double gamma = 0.0;
  double dt = 0.0;
};

/// Throws Error(kParameter) unless 0 <= rho_inf <= 1.
AlphaParams alpha_parameters(double rho_inf, double dt = 0.0);

struct TimeState {
  std::vector<double> U;
  std::vector<double> Udot;
  double t = 0.0;
};

/// R(t, U, Udot)
using TimeResidualFn = std::function<void(double t, std::span<const double> U,
                                          std::span<const double> Udot, std::span<double> R)>;
/// Solves (shift_udot dR/dUdot + shift_u dR/dU) dV = R at the stage values.
using TimeJacobianSolveFn = std::function<int(
    double t, std::span<const double> U, std::span<const double> Udot, double shift_u,
    double shift_udot, std::span<const double> R, std::span<double> dV)>;

/// Advances state by one step. On return U and Udot satisfy
/// U_{n+1} = U_n + dt((1-gamma) Udot_n + gamma Udot_{n+1}) whether or not
/// Newton converged; check the result.
NewtonResult galpha_step(const TimeResidualFn& R, const TimeJacobianSolveFn& J,
                         TimeState& state, const AlphaParams& params,
                         const NewtonConfig& config);

/// Rows of (step, iteration, residual) for CSV output.
struct ConvergenceLog {
  struct Row {
    int step = 0;
    int iteration = 0;
    double residual = 0.0;
    int linear_iterations = 0;
  };
  std::vector<Row> rows;

  void record(int step, const NewtonResult& r);
  void write_csv(std::ostream& os) const;
  void write_csv(const std::string& path) const;
};

}  // namespace iga
