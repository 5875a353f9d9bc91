// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "iga/error.hpp"
#include "iga/solvers.hpp"
#include "iga/workers.hpp"

namespace iga {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresResult gmres_solve(const LinearOperator& A, std::span<const double> b,
                        std::span<double> x, const LinearOperator* M,
                        const GmresConfig& cfg) {
  if (b.size() != x.size()) fail(ErrorCode::kParameter, "gmres: size mismatch");
  if (cfg.restart < 1 || cfg.max_iterations < 0 || !(cfg.rtol > 0) || !(cfg.atol > 0))
    fail(ErrorCode::kParameter, "gmres: invalid configuration");
  const size_t n = b.size();
  const int m = cfg.restart;
  GmresResult res;

  std::vector<double> r(n), w(n), z(n);
  std::vector<std::vector<double>> V(static_cast<size_t>(m + 1), std::vector<double>(n));
  std::vector<std::vector<double>> Z;  // preconditioned directions
  if (M) Z.assign(static_cast<size_t>(m), std::vector<double>(n));
  std::vector<double> H(static_cast<size_t>((m + 1) * m)), cs(static_cast<size_t>(m)),
      sn(static_cast<size_t>(m)), g(static_cast<size_t>(m + 1)), y(static_cast<size_t>(m));
  auto h = [&](int i, int j) -> double& { return H[static_cast<size_t>(i * m + j)]; };

  const double bnorm = norm(b);
  const double target = std::max(cfg.rtol * bnorm, cfg.atol);

  auto residual = [&] {
    A(x, r);
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    return norm(r);
  };

  double beta = residual();
  res.history.push_back(beta);
  res.residual = beta;
  if (n == 0 || (!cfg.fixed_iterations && beta <= target)) {
    res.converged = true;
    return res;
  }

  int total = 0;
  while (total < cfg.max_iterations) {
    if (beta == 0.0) {
      res.converged = true;
      break;
    }
    const double cycle_start = beta;
    for (size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int j = 0;
    bool breakdown = false, done = false;
    for (; j < m && total < cfg.max_iterations; ++j) {
      std::span<const double> dir = V[static_cast<size_t>(j)];
      if (M) {
        (*M)(V[static_cast<size_t>(j)], Z[static_cast<size_t>(j)]);
        dir = Z[static_cast<size_t>(j)];
      }
      A(dir, w);
      // Modified Gram-Schmidt.
      for (int i = 0; i <= j; ++i) {
        h(i, j) = dot(w, V[static_cast<size_t>(i)]);
        for (size_t k = 0; k < n; ++k) w[k] -= h(i, j) * V[static_cast<size_t>(i)][k];
      }
      const double hn = norm(w);
      h(j + 1, j) = hn;
      for (int i = 0; i < j; ++i) {
        const double t = cs[static_cast<size_t>(i)] * h(i, j) + sn[static_cast<size_t>(i)] * h(i + 1, j);
        h(i + 1, j) = -sn[static_cast<size_t>(i)] * h(i, j) + cs[static_cast<size_t>(i)] * h(i + 1, j);
        h(i, j) = t;
      }
      const double d = std::hypot(h(j, j), h(j + 1, j));
      if (d == 0.0) {
        breakdown = true;
        break;
      }
      cs[static_cast<size_t>(j)] = h(j, j) / d;
      sn[static_cast<size_t>(j)] = h(j + 1, j) / d;
      h(j, j) = d;
      h(j + 1, j) = 0.0;
      g[static_cast<size_t>(j + 1)] = -sn[static_cast<size_t>(j)] * g[static_cast<size_t>(j)];
      g[static_cast<size_t>(j)] *= cs[static_cast<size_t>(j)];
      ++total;
      const double est = std::abs(g[static_cast<size_t>(j + 1)]);
      res.history.push_back(est);
      if (hn <= 1e-14 * d) {
        // Happy breakdown: the Krylov space is invariant.
        ++j;
        breakdown = true;
        break;
      }
      if (!cfg.fixed_iterations && est <= target) {
        ++j;
        done = true;
        break;
      }
      for (size_t k = 0; k < n; ++k) V[static_cast<size_t>(j + 1)][k] = w[k] / hn;
    }
    // x += Z y (or V y) with H y = g.
    for (int i = j - 1; i >= 0; --i) {
      double s = g[static_cast<size_t>(i)];
      for (int k = i + 1; k < j; ++k) s -= h(i, k) * y[static_cast<size_t>(k)];
      y[static_cast<size_t>(i)] = s / h(i, i);
    }
    for (int i = 0; i < j; ++i) {
      const auto& dir = M ? Z[static_cast<size_t>(i)] : V[static_cast<size_t>(i)];
      for (size_t k = 0; k < n; ++k) x[k] += y[static_cast<size_t>(i)] * dir[k];
    }
    beta = residual();
    res.residual = beta;
    if (done || breakdown) {
      res.converged = beta <= target;
      break;
    }
    if (!cfg.fixed_iterations && beta <= target) {
      res.converged = true;
      break;
    }
    if (beta >= cycle_start * (1.0 - 1e-14)) {
      res.stagnated = true;
      break;
    }
  }
  res.iterations = total;
  if (cfg.fixed_iterations) res.converged = beta <= target;
  return res;
}

GmresResult solve_sparse(const CsrMatrix& K, const Ilu0BlockJacobi* M,
                         std::span<const double> b, std::span<double> x,
                         const GmresConfig& config, WorkerTeam* team) {
  const LinearOperator A = [&](std::span<const double> in, std::span<double> out) {
    if (team)
      K.multiply(in, out, *team);
    else
      K.multiply(in, out);
  };
  if (!M) return gmres_solve(A, b, x, nullptr, config);
  const LinearOperator P = [&](std::span<const double> in, std::span<double> out) {
    if (team)
      M->apply(in, out, *team);
    else
      M->apply(in, out);
  };
  return gmres_solve(A, b, x, &P, config);
}

}  // namespace iga
