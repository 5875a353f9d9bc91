// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iga/error.hpp"

namespace iga {

int NurbsPatch::point_count() const {
  int n = 1;
  for (const auto& kv : axes) n *= kv.basis_count();
  return n;
}

std::array<int, kMaxDim> NurbsPatch::counts() const {
  std::array<int, kMaxDim> c{1, 1, 1};
  for (int d = 0; d < dim; ++d) c[d] = axes[static_cast<size_t>(d)].basis_count();
  return c;
}

void NurbsPatch::validate() const {
  if (dim < 1 || dim > kMaxDim)
    fail(ErrorCode::kParameter, "patch: dimension must be 1..3");
  if (static_cast<int>(axes.size()) != dim)
    fail(ErrorCode::kParameter, "patch: one knot vector per dimension required");
  if (!periodic.empty() && static_cast<int>(periodic.size()) != dim)
    fail(ErrorCode::kParameter, "patch: periodic flags must match dimension");
  if (points.size() != static_cast<size_t>(point_count() * stride())) {
    std::ostringstream os;
    os << "patch: expected " << point_count() << " control points of "
       << stride() << " values, got " << points.size() << " values";
    fail(ErrorCode::kParameter, os.str());
  }
  for (int B = 0; B < point_count(); ++B)
    if (!(weight(B) > 0.0)) {
      std::ostringstream os;
      os << "patch: non-positive weight at control point " << B;
      fail(ErrorCode::kParameter, os.str());
    }
}

namespace {

double determinant(const Mat3& a, int dim) {
  switch (dim) {
    case 1: return a[0][0];
    case 2: return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    default:
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }
}

Mat3 inverse(const Mat3& a, double det, int dim) {
  Mat3 r{};
  const double s = 1.0 / det;
  switch (dim) {
    case 1:
      r[0][0] = s;
      break;
    case 2:
      r[0][0] = a[1][1] * s;
      r[0][1] = -a[0][1] * s;
      r[1][0] = -a[1][0] * s;
      r[1][1] = a[0][0] * s;
      break;
    default:
      r[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) * s;
      r[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) * s;
      r[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) * s;
      r[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) * s;
      r[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) * s;
      r[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) * s;
      r[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) * s;
      r[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) * s;
      r[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) * s;
  }
  return r;
}

}  // namespace

void map_and_jacobian(std::span<const double> ctrl, const RationalTable& rt,
                      MapDerivatives& md) {
  const int dim = rt.dim;
  const int nen = rt.nen;
  if (rt.order < 1)
    fail(ErrorCode::kContract, "map_and_jacobian: first derivatives required");
  if (ctrl.size() != static_cast<size_t>(nen * dim))
    fail(ErrorCode::kParameter, "map_and_jacobian: control point count mismatch");
  md = MapDerivatives{};
  md.dim = dim;
  md.order = rt.order;
  auto X = [&](int B, int i) { return ctrl[static_cast<size_t>(B * dim + i)]; };

  for (int B = 0; B < nen; ++B)
    for (int i = 0; i < dim; ++i) {
      const double xb = X(B, i);
      md.x[i] += xb * rt.v(B);
      for (int a = 0; a < dim; ++a) md.dx[i][a] += xb * rt.g(B, a);
      if (rt.order >= 2)
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b) md.dx2[i][a][b] += xb * rt.h(B, a, b);
      if (rt.order >= 3)
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c) md.dx3[i][a][b][c] += xb * rt.t(B, a, b, c);
    }

  md.det = determinant(md.dx, dim);
  double scale = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a) scale = std::max(scale, std::abs(md.dx[i][a]));
  if (!(std::abs(md.det) >= 1e-14 * std::pow(scale, dim)) || scale == 0.0) {
    std::ostringstream os;
    os << "singular geometric mapping at x = (" << md.x[0] << ", " << md.x[1]
       << ", " << md.x[2] << "), det = " << md.det;
    fail(ErrorCode::kSingularMapping, os.str());
  }
  md.dxi = inverse(md.dx, md.det, dim);
  md.inverse_order = 1;
}

void inverse_map_higher(MapDerivatives& md, int order) {
  const int dim = md.dim;
  if (md.inverse_order < 1)
    fail(ErrorCode::kContract, "inverse_map_higher: inverse Jacobian not computed");
  if (order > md.order)
    fail(ErrorCode::kContract, "inverse_map_higher: map derivatives missing");
  if (order < 2) return;
  const Mat3& J = md.dxi;

  // T[m][n][l] = x_{m,em} xi_{e,n} xi_{u,l}
  Ten3 T{};
  for (int m = 0; m < dim; ++m) {
    Mat3 half{};  // half[e][l] = x_{m,eu} xi_{u,l}
    for (int e = 0; e < dim; ++e)
      for (int l = 0; l < dim; ++l)
        for (int u = 0; u < dim; ++u) half[e][l] += md.dx2[m][e][u] * J[u][l];
    for (int n = 0; n < dim; ++n)
      for (int l = 0; l < dim; ++l)
        for (int e = 0; e < dim; ++e) T[m][n][l] += J[e][n] * half[e][l];
  }
  // xi_{v,nl} = -x_{m,eu} xi_{e,n} xi_{u,l} xi_{v,m}
  md.dxi2 = Ten3{};
  for (int v = 0; v < dim; ++v)
    for (int n = 0; n < dim; ++n)
      for (int l = n; l < dim; ++l) {
        double s = 0.0;
        for (int m = 0; m < dim; ++m) s -= J[v][m] * T[m][n][l];
        md.dxi2[v][n][l] = md.dxi2[v][l][n] = s;
      }
  md.inverse_order = 2;
  if (order < 3) return;

  const Ten3& H = md.dxi2;
  // S[m][n][l][o] = x_{m,euw} xi_{e,n} xi_{u,l} xi_{w,o}
  // Q[m][n][l][o] = x_{m,eu} (xi_{e,no} xi_{u,l} + xi_{e,n} xi_{u,lo})
  Ten4 S{}, Q{};
  for (int m = 0; m < dim; ++m) {
    Ten3 a{};  // a[e][u][o] = x_{m,euw} xi_{w,o}
    for (int e = 0; e < dim; ++e)
      for (int u = 0; u < dim; ++u)
        for (int o = 0; o < dim; ++o)
          for (int w = 0; w < dim; ++w) a[e][u][o] += md.dx3[m][e][u][w] * J[w][o];
    Ten3 b{};  // b[e][l][o] = a[e][u][o] xi_{u,l}
    for (int e = 0; e < dim; ++e)
      for (int l = 0; l < dim; ++l)
        for (int o = 0; o < dim; ++o)
          for (int u = 0; u < dim; ++u) b[e][l][o] += a[e][u][o] * J[u][l];
    for (int n = 0; n < dim; ++n)
      for (int l = 0; l < dim; ++l)
        for (int o = 0; o < dim; ++o) {
          double s = 0.0;
          for (int e = 0; e < dim; ++e) s += J[e][n] * b[e][l][o];
          S[m][n][l][o] = s;
          double q = 0.0;
          for (int e = 0; e < dim; ++e)
            for (int u = 0; u < dim; ++u)
              q += md.dx2[m][e][u] * (H[e][n][o] * J[u][l] + J[e][n] * H[u][l][o]);
          Q[m][n][l][o] = q;
        }
  }
  md.dxi3 = Ten4{};
  for (int v = 0; v < dim; ++v)
    for (int n = 0; n < dim; ++n)
      for (int l = 0; l < dim; ++l)
        for (int o = 0; o < dim; ++o) {
          double s = 0.0;
          for (int m = 0; m < dim; ++m)
            s -= J[v][m] * (S[m][n][l][o] + Q[m][n][l][o]) + H[v][m][o] * T[m][n][l];
          md.dxi3[v][n][l][o] = s;
        }
  md.inverse_order = 3;
}

void push_forward(const RationalTable& rt, const MapDerivatives& md, int order,
                  ShapeBundle& out) {
  const int dim = rt.dim;
  const int nen = rt.nen;
  if (order < 1 || order > kMaxDerivOrder)
    fail(ErrorCode::kParameter, "push_forward: order must be 1..3");
  if (rt.order < order || md.inverse_order < order)
    fail(ErrorCode::kContract, "push_forward: missing derivative orders");
  out.resize(dim, nen, order);
  out.det = md.det;
  const Mat3& J = md.dxi;
  const Ten3& H = md.dxi2;
  const Ten4& T = md.dxi3;

  for (int A = 0; A < nen; ++A) {
    out.v(A) = rt.v(A);
    for (int i = 0; i < dim; ++i) {
      double s = 0.0;
      for (int a = 0; a < dim; ++a) s += rt.g(A, a) * J[a][i];
      out.g(A, i) = s;
    }
    if (order < 2) continue;

    // P[a][j] = R_{A,ab} xi_{b,j}
    Mat3 P{};
    for (int a = 0; a < dim; ++a)
      for (int j = 0; j < dim; ++j)
        for (int b = 0; b < dim; ++b) P[a][j] += rt.h(A, a, b) * J[b][j];
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += J[a][i] * P[a][j] + rt.g(A, a) * H[a][i][j];
        out.h(A, i, j) = out.h(A, j, i) = s;
      }
    if (order < 3) continue;

    // C[a][b][k] = R_{A,abc} xi_{c,k}; D[a][j][k] = C[a][b][k] xi_{b,j}
    Ten3 C{}, D{};
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int k = 0; k < dim; ++k)
          for (int c = 0; c < dim; ++c) C[a][b][k] += rt.t(A, a, b, c) * J[c][k];
    for (int a = 0; a < dim; ++a)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int b = 0; b < dim; ++b) D[a][j][k] += C[a][b][k] * J[b][j];
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        for (int k = j; k < dim; ++k) {
          double s = 0.0;
          for (int a = 0; a < dim; ++a) {
            s += J[a][i] * D[a][j][k] + rt.g(A, a) * T[a][i][j][k];
            for (int b = 0; b < dim; ++b)
              s += rt.h(A, a, b) *
                   (J[a][i] * H[b][j][k] + J[b][j] * H[a][i][k] + J[b][k] * H[a][i][j]);
          }
          out.t(A, i, j, k) = out.t(A, i, k, j) = out.t(A, j, i, k) =
              out.t(A, j, k, i) = out.t(A, k, i, j) = out.t(A, k, j, i) = s;
        }
  }
}

int PointEvaluation::global_function(const NurbsPatch& patch, int A) const {
  const auto counts = patch.counts();
  std::array<int, kMaxDim> loc{0, 0, 0};
  int rem = A;
  for (int d = patch.dim - 1; d >= 0; --d) {
    loc[d] = rem % local_counts[d];
    rem /= local_counts[d];
  }
  int g = 0;
  for (int d = 0; d < patch.dim; ++d) g = g * counts[d] + first[d] + loc[d];
  return g;
}

PointEvaluation evaluate_point(const NurbsPatch& patch,
                               std::span<const double> xi, int order) {
  const int dim = patch.dim;
  if (static_cast<int>(xi.size()) != dim)
    fail(ErrorCode::kParameter, "evaluate_point: coordinate dimension mismatch");
  PointEvaluation pe;
  const int eval_order = std::max(order, 1);
  std::array<BasisTable, kMaxDim> tables;
  std::array<const BasisTable*, kMaxDim> ptrs{};
  for (int d = 0; d < dim; ++d) {
    const KnotVector& kv = patch.axes[static_cast<size_t>(d)];
    const int span = find_span(kv, xi[static_cast<size_t>(d)]);
    eval_basis_on_span(kv, span, xi[static_cast<size_t>(d)], eval_order,
                       tables[static_cast<size_t>(d)]);
    pe.first[d] = span - kv.degree();
    pe.local_counts[d] = kv.degree() + 1;
    ptrs[static_cast<size_t>(d)] = &tables[static_cast<size_t>(d)];
  }
  DerivTable M;
  tensor_bspline(std::span<const BasisTable* const>(ptrs.data(), static_cast<size_t>(dim)),
                 eval_order, M);
  std::vector<double> w(static_cast<size_t>(M.nen));
  std::vector<double> ctrl(static_cast<size_t>(M.nen * dim));
  for (int A = 0; A < M.nen; ++A) {
    const int B = pe.global_function(patch, A);
    w[static_cast<size_t>(A)] = patch.weight(B);
    for (int c = 0; c < dim; ++c) ctrl[static_cast<size_t>(A * dim + c)] = patch.coord(B, c);
  }
  eval_rational(M, w, eval_order, pe.rational);
  map_and_jacobian(ctrl, pe.rational, pe.map);
  inverse_map_higher(pe.map, eval_order);
  push_forward(pe.rational, pe.map, eval_order, pe.shape);
  return pe;
}

Vec3 map_point(const NurbsPatch& patch, std::span<const double> xi) {
  return evaluate_point(patch, xi, 1).map.x;
}

}  // namespace iga
