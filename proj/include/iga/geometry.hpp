// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Isoparametric geometry: NURBS patches, the parametric-to-physical map with
// its derivatives, derivatives of the inverse map to third order, and the
// push-forward of rational basis derivatives to physical coordinates.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "iga/nurbs.hpp"
#include "iga/splines.hpp"

namespace iga {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
using Ten3 = std::array<Mat3, 3>;
using Ten4 = std::array<Ten3, 3>;

/// Single NURBS patch. Parametric and physical dimensions are equal.
/// Control points are stored homogeneous (x*w, y*w, z*w, w), dim+1 doubles
/// per point, enumerated lexicographically with the last axis fastest.
struct NurbsPatch {
  int dim = 0;
  std::vector<KnotVector> axes;
  /// Per axis: -1 for an open knot vector, otherwise the continuity k the
  /// axis was unclamped to.
  std::vector<int> periodic;
  std::vector<double> points;

  int stride() const noexcept { return dim + 1; }
  int point_count() const;
  std::array<int, kMaxDim> counts() const;
  double weight(int B) const {
    return points[static_cast<size_t>(B * stride() + dim)];
  }
  /// Cartesian coordinate c of control point B.
  double coord(int B, int c) const {
    return points[static_cast<size_t>(B * stride() + c)] / weight(B);
  }

  /// Throws Error(kParameter) on inconsistent extents or non-positive weights.
  void validate() const;

  friend bool operator==(const NurbsPatch&, const NurbsPatch&) = default;
};

/// Map x(xi), its parametric derivatives and the inverse-map derivatives.
/// Index conventions: dx[i][a] = x_{i,a}, dx2[i][a][b] = x_{i,ab},
/// dxi[a][i] = xi_{a,i}, dxi2[a][i][j] = xi_{a,ij}, and so on.
struct MapDerivatives {
  int dim = 0;
  int order = 0;          ///< highest parametric derivative of x available
  int inverse_order = 0;  ///< highest derivative of xi(x) available
  Vec3 x{};
  Mat3 dx{};
  Ten3 dx2{};
  Ten4 dx3{};
  double det = 0.0;
  Mat3 dxi{};
  Ten3 dxi2{};
  Ten4 dxi3{};
};

/// Spatial basis derivatives R_{A,i}, R_{A,ij}, R_{A,ijk} and the Jacobian
/// determinant of the geometric map at the point.
struct ShapeBundle : DerivTable {
  double det = 0.0;
};

/// x and its parametric derivatives from element control points `ctrl`
/// (Cartesian, nen x dim) up to the order held by `rt`; computes det and the
/// inverse Jacobian. Throws Error(kSingularMapping) if |det| is below
/// 1e-14 relative to the Jacobian scale.
void map_and_jacobian(std::span<const double> ctrl, const RationalTable& rt,
                      MapDerivatives& md);

/// Second (and, if md.order >= 3, third) derivatives of the inverse map.
void inverse_map_higher(MapDerivatives& md, int order);

/// Spatial derivatives to `order` (1..3). Throws Error(kContract) if rt or
/// md lack the orders needed.
void push_forward(const RationalTable& rt, const MapDerivatives& md, int order,
                  ShapeBundle& out);

/// Everything above at a single parametric point of a patch.
struct PointEvaluation {
  std::array<int, kMaxDim> first{};  ///< clamped index of local function 0 per axis
  std::array<int, kMaxDim> local_counts{1, 1, 1};
  RationalTable rational;
  MapDerivatives map;
  ShapeBundle shape;

  /// Lexicographic clamped patch index of local function A.
  int global_function(const NurbsPatch& patch, int A) const;
};

PointEvaluation evaluate_point(const NurbsPatch& patch,
                               std::span<const double> xi, int order);

/// Physical point x(xi).
Vec3 map_point(const NurbsPatch& patch, std::span<const double> xi);

}  // namespace iga
