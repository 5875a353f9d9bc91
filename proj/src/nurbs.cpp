// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/nurbs.hpp"

#include "iga/error.hpp"

namespace iga {

void DerivTable::resize(int d, int n, int o) {
  dim = d;
  nen = n;
  order = o;
  const size_t sn = static_cast<size_t>(n);
  const size_t sd = static_cast<size_t>(d);
  val.assign(sn, 0.0);
  d1.assign(o >= 1 ? sn * sd : 0, 0.0);
  d2.assign(o >= 2 ? sn * sd * sd : 0, 0.0);
  d3.assign(o >= 3 ? sn * sd * sd * sd : 0, 0.0);
}

void tensor_bspline(std::span<const BasisTable* const> axes, int order,
                    DerivTable& out) {
  const int dim = static_cast<int>(axes.size());
  if (dim < 1 || dim > kMaxDim)
    fail(ErrorCode::kParameter, "tensor_bspline: dimension must be 1..3");
  if (order < 0 || order > kMaxDerivOrder)
    fail(ErrorCode::kParameter, "tensor_bspline: order must be 0..3");
  std::array<int, kMaxDim> nloc{1, 1, 1};
  int nen = 1;
  for (int d = 0; d < dim; ++d) {
    if (axes[d]->nderiv < order)
      fail(ErrorCode::kContract, "tensor_bspline: axis table lacks derivative rows");
    nloc[d] = axes[d]->degree + 1;
    nen *= nloc[d];
  }
  out.resize(dim, nen, order);

  // N(d, o, a): derivative of order o of the a-th local function on axis d.
  auto N = [&](int d, int o, int a) { return (*axes[d])(o, a); };

  std::array<int, kMaxDim> loc{0, 0, 0};
  for (int A = 0; A < nen; ++A) {
    int rem = A;
    for (int d = dim - 1; d >= 0; --d) {
      loc[d] = rem % nloc[d];
      rem /= nloc[d];
    }
    // Product with per-axis derivative orders `ord`.
    auto prod = [&](const std::array<int, kMaxDim>& ord) {
      double v = 1.0;
      for (int d = 0; d < dim; ++d) v *= N(d, ord[d], loc[d]);
      return v;
    };
    out.v(A) = prod({0, 0, 0});
    if (order >= 1)
      for (int i = 0; i < dim; ++i) {
        std::array<int, kMaxDim> o{0, 0, 0};
        ++o[i];
        out.g(A, i) = prod(o);
      }
    if (order >= 2)
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
          std::array<int, kMaxDim> o{0, 0, 0};
          ++o[i];
          ++o[j];
          out.h(A, i, j) = out.h(A, j, i) = prod(o);
        }
    if (order >= 3)
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
          for (int k = j; k < dim; ++k) {
            std::array<int, kMaxDim> o{0, 0, 0};
            ++o[i];
            ++o[j];
            ++o[k];
            const double v = prod(o);
            out.t(A, i, j, k) = out.t(A, i, k, j) = out.t(A, j, i, k) =
                out.t(A, j, k, i) = out.t(A, k, i, j) = out.t(A, k, j, i) = v;
          }
  }
}

void eval_rational(const DerivTable& M, std::span<const double> weights,
                   int order, RationalTable& R) {
  const int dim = M.dim;
  const int nen = M.nen;
  if (static_cast<int>(weights.size()) != nen)
    fail(ErrorCode::kParameter, "eval_rational: weight count does not match basis");
  if (order > M.order)
    fail(ErrorCode::kContract, "eval_rational: B-spline table lacks derivative orders");
  for (double wa : weights)
    if (!(wa > 0.0)) fail(ErrorCode::kParameter, "eval_rational: non-positive weight");

  R.resize(dim, nen, order);
  auto W2 = [&](int i, int j) -> double& { return R.ddw[static_cast<size_t>(i * dim + j)]; };
  auto W3 = [&](int i, int j, int k) -> double& {
    return R.dddw[static_cast<size_t>((i * dim + j) * dim + k)];
  };

  R.w = 0.0;
  R.dw.fill(0.0);
  R.ddw.fill(0.0);
  R.dddw.fill(0.0);
  for (int B = 0; B < nen; ++B) {
    const double wB = weights[static_cast<size_t>(B)];
    R.w += wB * M.v(B);
    if (order >= 1)
      for (int i = 0; i < dim; ++i) R.dw[static_cast<size_t>(i)] += wB * M.g(B, i);
    if (order >= 2)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) W2(i, j) += wB * M.h(B, i, j);
    if (order >= 3)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int k = 0; k < dim; ++k) W3(i, j, k) += wB * M.t(B, i, j, k);
  }
  if (!(R.w > 0.0)) fail(ErrorCode::kDegenerate, "eval_rational: w(xi) <= 0");
  const double inv = 1.0 / R.w;
  auto W1 = [&](int i) { return R.dw[static_cast<size_t>(i)]; };

  for (int A = 0; A < nen; ++A) {
    const double wA = weights[static_cast<size_t>(A)];
    const double RA = wA * M.v(A) * inv;
    R.v(A) = RA;
    if (order >= 1)
      for (int a = 0; a < dim; ++a)
        R.g(A, a) = (wA * M.g(A, a) - RA * W1(a)) * inv;
    if (order >= 2)
      for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b)
          R.h(A, a, b) = R.h(A, b, a) =
              (wA * M.h(A, a, b) - RA * W2(a, b) - R.g(A, b) * W1(a) -
               R.g(A, a) * W1(b)) * inv;
    if (order >= 3)
      for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b)
          for (int c = b; c < dim; ++c) {
            const double v =
                (wA * M.t(A, a, b, c) - RA * W3(a, b, c) -
                 (R.g(A, a) * W2(b, c) + R.g(A, b) * W2(a, c) + R.g(A, c) * W2(a, b)) -
                 (R.h(A, b, c) * W1(a) + R.h(A, a, c) * W1(b) + R.h(A, a, b) * W1(c))) *
                inv;
            R.t(A, a, b, c) = R.t(A, a, c, b) = R.t(A, b, a, c) =
                R.t(A, b, c, a) = R.t(A, c, a, b) = R.t(A, c, b, a) = v;
          }
  }
}

RationalTable eval_rational(const DerivTable& bspline,
                            std::span<const double> weights, int order) {
  RationalTable R;
  eval_rational(bspline, weights, order, R);
  return R;
}

}  // namespace iga
