// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Tensor-product B-spline tables and rational (NURBS) basis functions with
// parametric derivatives up to third order.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "iga/splines.hpp"

namespace iga {

inline constexpr int kMaxDim = 3;

/// Values and derivatives (orders 0..order) of `nen` functions of `dim`
/// variables at one point. Derivative blocks are dense and symmetric: entry
/// (a, i, j) equals (a, j, i), and likewise for all permutations in d3.
struct DerivTable {
  int dim = 0;
  int nen = 0;
  int order = 0;
  std::vector<double> val;  // [nen]
  std::vector<double> d1;   // [nen][dim]
  std::vector<double> d2;   // [nen][dim][dim]
  std::vector<double> d3;   // [nen][dim][dim][dim]

  void resize(int dim, int nen, int order);

  double& v(int a) { return val[static_cast<size_t>(a)]; }
  double v(int a) const { return val[static_cast<size_t>(a)]; }
  double& g(int a, int i) { return d1[idx1(a, i)]; }
  double g(int a, int i) const { return d1[idx1(a, i)]; }
  double& h(int a, int i, int j) { return d2[idx2(a, i, j)]; }
  double h(int a, int i, int j) const { return d2[idx2(a, i, j)]; }
  double& t(int a, int i, int j, int k) { return d3[idx3(a, i, j, k)]; }
  double t(int a, int i, int j, int k) const { return d3[idx3(a, i, j, k)]; }

 private:
  size_t idx1(int a, int i) const { return static_cast<size_t>(a * dim + i); }
  size_t idx2(int a, int i, int j) const {
    return static_cast<size_t>((a * dim + i) * dim + j);
  }
  size_t idx3(int a, int i, int j, int k) const {
    return static_cast<size_t>(((a * dim + i) * dim + j) * dim + k);
  }
};

/// Rational basis R_A with its parametric derivatives, plus the weighting
/// function w(xi) and its derivatives.
struct RationalTable : DerivTable {
  double w = 0.0;
  std::array<double, kMaxDim> dw{};
  std::array<double, kMaxDim * kMaxDim> ddw{};
  std::array<double, kMaxDim * kMaxDim * kMaxDim> dddw{};
};

/// Tensor product of per-axis 1D tables. Local function A enumerates the
/// per-axis local indices lexicographically with the last axis fastest.
/// Each axis table must carry at least `order` derivative rows.
void tensor_bspline(std::span<const BasisTable* const> axes, int order,
                    DerivTable& out);

/// R_A = w_A M_A / w and its derivatives to `order` from B-spline table M
/// and projective weights w_A. Throws Error(kParameter) for a non-positive
/// weight and Error(kDegenerate) if w(xi) <= 0.
void eval_rational(const DerivTable& bspline, std::span<const double> weights,
                   int order, RationalTable& out);

RationalTable eval_rational(const DerivTable& bspline,
                            std::span<const double> weights, int order);

}  // namespace iga
