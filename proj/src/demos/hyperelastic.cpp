// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iga/demos.hpp"
#include "iga/error.hpp"
#include "iga/geometries.hpp"

namespace iga {

namespace {

double det(const Mat3& a, int dim) {
  if (dim == 1) return a[0][0];
  if (dim == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 inverse(const Mat3& a, int dim) {
  Mat3 r{};
  const double d = det(a, dim);
  if (dim == 1) {
    r[0][0] = 1 / d;
  } else if (dim == 2) {
    r[0][0] = a[1][1] / d;
    r[0][1] = -a[0][1] / d;
    r[1][0] = -a[1][0] / d;
    r[1][1] = a[0][0] / d;
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r[i][j] = (a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1]) / d;
      }
  }
  return r;
}

// Kinematics and stresses at one point.
struct Material {
  int dim = 2;
  Mat3 F{}, C{}, Ci{}, S{}, P{};
  double J = 1.0;

  void at(const PointData& pd, double lambda, double mu) {
    dim = pd.dim();
    for (int i = 0; i < dim; ++i) {
      const Vec3 g = pd.grad(0, i);
      for (int j = 0; j < dim; ++j) F[i][j] = (i == j ? 1.0 : 0.0) + g[j];
    }
    for (int I = 0; I < dim; ++I)
      for (int K = 0; K < dim; ++K) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += F[i][I] * F[i][K];
        C[I][K] = s;
      }
    J = det(F, dim);
    Ci = inverse(C, dim);
    const double a = 0.5 * lambda * (J * J - 1);
    for (int I = 0; I < dim; ++I)
      for (int K = 0; K < dim; ++K) S[I][K] = a * Ci[I][K] + mu * ((I == K ? 1.0 : 0.0) - Ci[I][K]);
    for (int i = 0; i < dim; ++i)
      for (int K = 0; K < dim; ++K) {
        double s = 0.0;
        for (int I = 0; I < dim; ++I) s += F[i][I] * S[I][K];
        P[i][K] = s;
      }
  }
};

}  // namespace

HyperelasticProblem HyperelasticProblem::from_young(double E, double nu) {
  HyperelasticProblem p;
  p.lambda = E * nu / ((1 + nu) * (1 - 2 * nu));
  p.mu = E / (2 * (1 + nu));
  return p;
}

Hyperelastic::Hyperelastic(const TensorSpace& space, const NurbsPatch& patch,
                           const HyperelasticProblem& problem, int workers)
    : space_(&space), patch_(&patch), problem_(problem) {
  if (!(problem.mu > 0) || !(problem.lambda > -2 * problem.mu / 3))
    fail(ErrorCode::kParameter, "hyperelastic: require mu > 0 and lambda > -2 mu / 3");
  if (space.dof_per_node() != space.dim())
    fail(ErrorCode::kParameter, "hyperelastic: one displacement component per dimension required");
  if (problem.load_steps < 1) fail(ErrorCode::kParameter, "hyperelastic: load_steps must be positive");
  partition_ = make_partition(space, workers);
  assembler_ = std::make_unique<Assembler>(space, patch, partition_, 1);
  U_ = PartitionedVector(partition_, space.dim());
  R_ = PartitionedVector(partition_, space.dim());
}

Hyperelastic::~Hyperelastic() = default;

void Hyperelastic::residual(std::span<const double> U, std::span<double> R) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  PartitionedVector* in[] = {&U_};
  const double lambda = problem_.lambda, mu = problem_.mu;
  assembler_->form_vector(in, [&](const PointData& pd, std::span<double> f) {
    Material m;
    m.at(pd, lambda, mu);
    const int dim = m.dim;
    for (int A = 0; A < pd.nen(); ++A)
      for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int K = 0; K < dim; ++K) s += m.P[i][K] * pd.shape.g(A, K);
        f[static_cast<size_t>(A * dim + i)] = s;
      }
  }, R_);
  std::copy(R_.values().begin(), R_.values().end(), R.begin());
}

void Hyperelastic::tangent(std::span<const double> U, CsrMatrix& Kmat) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  PartitionedVector* in[] = {&U_};
  const double lambda = problem_.lambda, mu = problem_.mu;
  assembler_->form_matrix(in, [&](const PointData& pd, std::span<double> k) {
    Material m;
    m.at(pd, lambda, mu);
    const int dim = m.dim, n = pd.nen(), nd = n * dim;
    // Material tangent 2 dS/dC.
    const double a = lambda * m.J * m.J, b = 2 * mu - lambda * (m.J * m.J - 1);
    double CC[3][3][3][3];
    for (int I = 0; I < dim; ++I)
      for (int J = 0; J < dim; ++J)
        for (int K = 0; K < dim; ++K)
          for (int L = 0; L < dim; ++L)
            CC[I][J][K][L] = a * m.Ci[I][J] * m.Ci[K][L] +
                             b * 0.5 * (m.Ci[I][K] * m.Ci[J][L] + m.Ci[I][L] * m.Ci[J][K]);
    // dP_iJ / dF_kL = delta_ik S_JL + F_iI CC_IJKL F_kK
    double Aijkl[3][3][3][3];
    for (int i = 0; i < dim; ++i)
      for (int J = 0; J < dim; ++J)
        for (int k = 0; k < dim; ++k)
          for (int L = 0; L < dim; ++L) {
            double s = i == k ? m.S[J][L] : 0.0;
            for (int I = 0; I < dim; ++I)
              for (int K = 0; K < dim; ++K) s += m.F[i][I] * CC[I][J][K][L] * m.F[k][K];
            Aijkl[i][J][k][L] = s;
          }
    for (int A = 0; A < n; ++A)
      for (int i = 0; i < dim; ++i)
        for (int B = 0; B < n; ++B)
          for (int kk = 0; kk < dim; ++kk) {
            double s = 0.0;
            for (int J = 0; J < dim; ++J)
              for (int L = 0; L < dim; ++L)
                s += pd.shape.g(A, J) * Aijkl[i][J][kk][L] * pd.shape.g(B, L);
            k[static_cast<size_t>((A * dim + i) * nd + B * dim + kk)] = s;
          }
  }, Kmat);
}

void Hyperelastic::linear_stiffness(CsrMatrix& Kmat) {
  const double lambda = problem_.lambda, mu = problem_.mu;
  assembler_->form_matrix({}, [&](const PointData& pd, std::span<double> k) {
    const int dim = pd.dim(), n = pd.nen(), nd = n * dim;
    for (int A = 0; A < n; ++A)
      for (int i = 0; i < dim; ++i)
        for (int B = 0; B < n; ++B)
          for (int kk = 0; kk < dim; ++kk) {
            double s = lambda * pd.shape.g(A, i) * pd.shape.g(B, kk) +
                       mu * pd.shape.g(A, kk) * pd.shape.g(B, i);
            if (i == kk)
              for (int J = 0; J < dim; ++J) s += mu * pd.shape.g(A, J) * pd.shape.g(B, J);
            k[static_cast<size_t>((A * dim + i) * nd + B * dim + kk)] = s;
          }
  }, Kmat);
}

double Hyperelastic::strain_energy(std::span<const double> U) {
  std::copy(U.begin(), U.end(), U_.values().begin());
  PartitionedVector* in[] = {&U_};
  const double lambda = problem_.lambda, mu = problem_.mu;
  return assembler_->integrate(in, [&](const PointData& pd) {
    Material m;
    m.at(pd, lambda, mu);
    double tr = 0.0;
    for (int I = 0; I < m.dim; ++I) tr += m.C[I][I];
    return 0.25 * lambda * (m.J * m.J - 1) - (0.5 * lambda + mu) * std::log(m.J) +
           0.5 * mu * (tr - m.dim);
  });
}

std::vector<DirichletValue> Hyperelastic::boundary(double s) const {
  const int dim = space_->dim();
  std::vector<DirichletValue> bc;
  for (int side = 0; side < 2; ++side) {
    const Vec3& d = side == 0 ? problem_.left_displacement : problem_.right_displacement;
    for (int node : face_nodes(*space_, 0, side))
      for (int c = 0; c < dim; ++c) bc.push_back({node * dim + c, s * d[c]});
  }
  return bc;
}

std::vector<double> linear_elastic_solve(Hyperelastic& model, const GmresConfig& gmres) {
  CsrMatrix K = model.matrix();
  model.linear_stiffness(K);
  std::vector<double> F(static_cast<size_t>(K.rows()), 0.0);
  const auto bc = model.boundary(1.0);
  apply_dirichlet(K, F, bc);
  const Ilu0BlockJacobi M(K, Ilu0BlockJacobi::owned_blocks(model.partition(), model.space().dim()));
  std::vector<double> u(F.size(), 0.0);
  const GmresResult r = solve_sparse(K, &M, F, u, gmres);
  if (!r.converged) fail(ErrorCode::kConvergence, "linear elasticity: GMRES did not converge");
  return u;
}

HyperelasticResult neohookean_run(const HyperelasticProblem& problem,
                                  const HyperelasticOptions& opt) {
  HyperelasticResult res;
  const AxisSpec ax{opt.elements, opt.degree, opt.continuity};
  const std::vector<AxisSpec> axes{ax, ax};
  res.space = TensorSpace::build(axes, 2);
  res.patch = box_patch(res.space, std::vector<double>{0, 0}, std::vector<double>{1, 1});
  Hyperelastic model(res.space, res.patch, problem, opt.workers);
  const int dim = 2;
  const auto blocks = Ilu0BlockJacobi::owned_blocks(model.partition(), dim);
  CsrMatrix K = model.matrix();

  const size_t n = static_cast<size_t>(res.space.dof_count());
  res.u.assign(n, 0.0);
  std::vector<double> r(n);
  model.residual(res.u, r);
  double r0 = 0.0;
  for (double v : r) r0 += v * v;
  res.initial_residual = std::sqrt(r0);

  std::vector<DirichletValue> bc;
  const ResidualFn F = [&](std::span<const double> U, std::span<double> R) {
    model.residual(U, R);
    for (const auto& b : bc) R[static_cast<size_t>(b.dof)] = 0.0;
  };
  const JacobianSolveFn J = [&](std::span<const double> U, std::span<const double> R,
                                std::span<double> dU) {
    model.tangent(U, K);
    std::vector<double> rhs(R.begin(), R.end());
    std::vector<DirichletValue> zero(bc);
    for (auto& b : zero) b.value = 0.0;
    apply_dirichlet(K, rhs, zero);
    const Ilu0BlockJacobi M(K, blocks);
    return solve_sparse(K, &M, rhs, dU, opt.newton.linear).iterations;
  };
  // Solves at load fraction s starting from the current state. A tangent
  // predictor carries the boundary increment into the interior first, so
  // elements next to the moving face are not inverted.
  auto solve_at = [&](double s, LoadStep& step) {
    bc = model.boundary(s);
    model.residual(res.u, r);
    model.tangent(res.u, K);
    std::vector<DirichletValue> inc(bc);
    for (auto& b : inc) b.value = res.u[static_cast<size_t>(b.dof)] - b.value;
    apply_dirichlet(K, r, inc);
    const Ilu0BlockJacobi M(K, blocks);
    std::vector<double> dU(n, 0.0);
    const GmresResult pr = solve_sparse(K, &M, r, dU, opt.newton.linear);
    for (size_t i = 0; i < n; ++i) res.u[i] -= dU[i];
    for (const auto& b : bc) res.u[static_cast<size_t>(b.dof)] = b.value;
    step.newton += 1;
    step.linear += pr.iterations;
    const NewtonResult nr = newton_solve(F, J, res.u, opt.newton);
    step.newton += nr.iterations;
    step.linear += nr.linear_iterations;
    step.residual = nr.residuals.back();
    res.log.record(static_cast<int>(res.steps.size()) + 1, nr);
    return nr.converged;
  };

  const int steps = problem.load_steps;
  for (int i = 1; i <= steps; ++i) {
    const double s0 = static_cast<double>(i - 1) / steps, s1 = static_cast<double>(i) / steps;
    LoadStep step;
    step.fraction = s1;
    const std::vector<double> saved = res.u;
    if (!solve_at(s1, step)) {
      res.u = saved;
      step.halved = true;
      if (!solve_at(0.5 * (s0 + s1), step) || !solve_at(s1, step)) {
        std::ostringstream os;
        os << "hyperelastic: Newton failed at load step " << i << " of " << steps
           << " after halving the increment (residual " << step.residual << ")";
        fail(ErrorCode::kConvergence, os.str());
      }
    }
    step.energy = model.strain_energy(res.u);
    res.steps.push_back(step);
  }
  return res;
}

}  // namespace iga
