// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include "iga/error.hpp"
#include "iga/solvers.hpp"

namespace iga {

namespace {

double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace

NewtonResult newton_solve(const ResidualFn& F, const JacobianSolveFn& J,
                          std::span<double> U, const NewtonConfig& cfg) {
  if (cfg.max_iterations < 0 || !(cfg.rtol > 0) || !(cfg.atol > 0))
    fail(ErrorCode::kParameter, "newton: invalid configuration");
  NewtonResult res;
  std::vector<double> r(U.size()), dU(U.size());
  F(U, r);
  double rn = norm2(r);
  res.residuals.push_back(rn);
  const double target = std::max(cfg.rtol * rn, cfg.atol);
  auto met = [&] { return std::isfinite(rn) && rn <= target; };
  if (!cfg.fixed_iterations && met()) {
    res.converged = true;
    return res;
  }
  while (res.iterations < cfg.max_iterations) {
    if (!std::isfinite(rn)) break;
    std::fill(dU.begin(), dU.end(), 0.0);
    const int lin = J(U, r, dU);
    res.linear.push_back(lin);
    res.linear_iterations += lin;
    for (size_t i = 0; i < U.size(); ++i) U[i] -= dU[i];
    ++res.iterations;
    F(U, r);
    rn = norm2(r);
    res.residuals.push_back(rn);
    if (!cfg.fixed_iterations && met()) break;
  }
  res.converged = met();
  return res;
}

AlphaParams alpha_parameters(double rho_inf, double dt) {
  if (!(rho_inf >= 0.0 && rho_inf <= 1.0))
    fail(ErrorCode::kParameter, "generalized-alpha: rho_inf must lie in [0, 1]");
  if (!(dt >= 0.0)) fail(ErrorCode::kParameter, "generalized-alpha: negative time step");
  AlphaParams a;
  a.rho_inf = rho_inf;
  a.alpha_m = 0.5 * (3.0 - rho_inf) / (1.0 + rho_inf);
  a.alpha_f = 1.0 / (1.0 + rho_inf);
  a.gamma = 0.5 + a.alpha_m - a.alpha_f;
  a.dt = dt;
  return a;
}

NewtonResult galpha_step(const TimeResidualFn& R, const TimeJacobianSolveFn& J,
                         TimeState& state, const AlphaParams& p, const NewtonConfig& cfg) {
  const size_t n = state.U.size();
  if (state.Udot.size() != n) fail(ErrorCode::kParameter, "generalized-alpha: state size mismatch");
  if (!(p.dt > 0.0)) fail(ErrorCode::kParameter, "generalized-alpha: time step must be positive");
  const std::vector<double> Un = state.U, Vn = state.Udot;
  const double dt = p.dt, g = p.gamma, af = p.alpha_f, am = p.alpha_m;
  const double tf = state.t + af * dt;
  std::vector<double> Uf(n), Vm(n);
  // Stage values from the unknown V = Udot_{n+1}.
  auto stage = [&](std::span<const double> V) {
    for (size_t i = 0; i < n; ++i) {
      const double U1 = Un[i] + dt * ((1.0 - g) * Vn[i] + g * V[i]);
      Uf[i] = Un[i] + af * (U1 - Un[i]);
      Vm[i] = Vn[i] + am * (V[i] - Vn[i]);
    }
  };
  std::vector<double> V(n);
  for (size_t i = 0; i < n; ++i) V[i] = (g - 1.0) / g * Vn[i];
  const ResidualFn F = [&](std::span<const double> v, std::span<double> r) {
    stage(v);
    R(tf, Uf, Vm, r);
  };
  const JacobianSolveFn Jv = [&](std::span<const double> v, std::span<const double> r,
                                 std::span<double> dv) {
    stage(v);
    return J(tf, Uf, Vm, af * g * dt, am, r, dv);
  };
  NewtonResult res = newton_solve(F, Jv, V, cfg);
  for (size_t i = 0; i < n; ++i) {
    state.U[i] = Un[i] + dt * ((1.0 - g) * Vn[i] + g * V[i]);
    state.Udot[i] = V[i];
  }
  state.t += dt;
  return res;
}

void ConvergenceLog::record(int step, const NewtonResult& r) {
  for (size_t k = 0; k < r.residuals.size(); ++k)
    rows.push_back({step, static_cast<int>(k), r.residuals[k],
                    k == 0 ? 0 : r.linear[k - 1]});
}

void ConvergenceLog::write_csv(std::ostream& os) const {
  os << "step,iteration,residual,linear_iterations\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const Row& r : rows)
    os << r.step << ',' << r.iteration << ',' << r.residual << ',' << r.linear_iterations << '\n';
}

void ConvergenceLog::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_csv(out);
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace iga
