// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "iga/demos.hpp"
#include "iga/error.hpp"

namespace iga {

PoissonResult poisson_run(const TensorSpace& space, const NurbsPatch& patch,
                          const PoissonProblem& problem, const PoissonOptions& options) {
  if (space.dof_per_node() != 1) fail(ErrorCode::kParameter, "poisson: scalar space required");
  if (!problem.source || !problem.dirichlet)
    fail(ErrorCode::kParameter, "poisson: source and boundary data required");
  const int dim = space.dim();
  const Partition part = make_partition(space, options.workers);
  Assembler asmb(space, patch, part, 1);

  PoissonResult res;
  res.K = preallocate(space);
  asmb.form_matrix({}, [dim](const PointData& pd, std::span<double> k) {
    const int n = pd.nen();
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += pd.shape.g(A, i) * pd.shape.g(B, i);
        k[static_cast<size_t>(A * n + B)] = s;
      }
  }, res.K);
  PartitionedVector F(part, 1);
  asmb.form_vector({}, [&](const PointData& pd, std::span<double> f) {
    const double s = problem.source(pd.x);
    for (int A = 0; A < pd.nen(); ++A) f[static_cast<size_t>(A)] = s * pd.shape.v(A);
  }, F);
  res.F.assign(F.values().begin(), F.values().end());

  std::vector<int> nodes;
  for (int axis = 0; axis < dim; ++axis) {
    if (space.periodic(axis)) continue;
    for (int side = 0; side < 2; ++side)
      for (int n : face_nodes(space, axis, side)) nodes.push_back(n);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<DirichletValue> bc;
  bc.reserve(nodes.size());
  for (int n : nodes) bc.push_back({n, problem.dirichlet(node_point(space, patch, n))});
  apply_dirichlet(res.K, res.F, bc);

  const Ilu0BlockJacobi M(res.K, Ilu0BlockJacobi::owned_blocks(part, 1));
  res.u.assign(res.F.size(), 0.0);
  for (const auto& b : bc) res.u[static_cast<size_t>(b.dof)] = b.value;
  res.solve = solve_sparse(res.K, &M, res.F, res.u, options.gmres, &asmb.team());
  if (!res.solve.converged) {
    std::ostringstream os;
    os << "poisson: GMRES did not converge after " << res.solve.iterations
       << " iterations (residual " << res.solve.residual << ")";
    fail(ErrorCode::kConvergence, os.str());
  }

  if (problem.exact) {
    Assembler err(space, patch, part, 1, 1);
    PartitionedVector u(part, 1);
    std::copy(res.u.begin(), res.u.end(), u.values().begin());
    PartitionedVector* in[] = {&u};
    res.l2_error = std::sqrt(err.integrate(in, [&](const PointData& pd) {
      const double e = pd.value(0) - problem.exact(pd.x);
      return e * e;
    }));
    if (problem.exact_grad)
      res.h1_error = std::sqrt(err.integrate(in, [&](const PointData& pd) {
        const Vec3 g = pd.grad(0), ge = problem.exact_grad(pd.x);
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += (g[i] - ge[i]) * (g[i] - ge[i]);
        return s;
      }));
  }
  return res;
}

PoissonProblem poisson_sine_problem() {
  constexpr double pi = std::numbers::pi;
  PoissonProblem p;
  p.source = [](const Vec3& x) { return 2 * pi * pi * std::sin(pi * x[0]) * std::sin(pi * x[1]); };
  p.exact = [](const Vec3& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
  p.exact_grad = [](const Vec3& x) {
    return Vec3{pi * std::cos(pi * x[0]) * std::sin(pi * x[1]),
                pi * std::sin(pi * x[0]) * std::cos(pi * x[1]), 0.0};
  };
  p.dirichlet = p.exact;
  return p;
}

PoissonProblem poisson_annulus_problem() {
  // u = f(s) x y with s = r^2, f = (s - 1)(s - 4).
  PoissonProblem p;
  p.exact = [](const Vec3& x) {
    const double s = x[0] * x[0] + x[1] * x[1];
    return (s - 1) * (s - 4) * x[0] * x[1];
  };
  p.exact_grad = [](const Vec3& x) {
    const double s = x[0] * x[0] + x[1] * x[1];
    const double f = (s - 1) * (s - 4), df = 2 * s - 5;  // df = d f / d s
    return Vec3{2 * x[0] * df * x[0] * x[1] + f * x[1], 2 * x[1] * df * x[0] * x[1] + f * x[0], 0.0};
  };
  p.source = [](const Vec3& x) {
    // lap u = x y (4 s f'' + 12 f') = x y (32 s - 60)
    const double s = x[0] * x[0] + x[1] * x[1];
    return -x[0] * x[1] * (32 * s - 60);
  };
  // Control points of the curved edges lie off the boundary, so pass the
  // boundary data itself rather than u.
  p.dirichlet = [](const Vec3&) { return 0.0; };
  return p;
}

}  // namespace iga
