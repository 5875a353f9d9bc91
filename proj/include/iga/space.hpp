// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Tensor-product spline spaces: construction (with periodic unclamping),
// element traversal, Gauss-Legendre quadrature, global numbering and the
// tensor-product adjacency graph.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "iga/nurbs.hpp"
#include "iga/splines.hpp"

namespace iga {

struct NurbsPatch;

/// Per-dimension construction parameters for a uniform space.
struct AxisSpec {
  int elements = 1;
  int degree = 1;
  int continuity = 0;  ///< interior continuity c, 0 <= c <= p-1
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
  int periodic_continuity = -1;  ///< k; negative means "same as continuity"
};

/// Per-dimension ordinal of a non-empty knot span.
using ElementId = std::array<int, kMaxDim>;

struct QuadratureRule {
  int dim = 0;
  std::array<int, kMaxDim> counts{1, 1, 1};
  std::vector<double> points;   // [npoints][dim], parametric
  std::vector<double> weights;  // [npoints], include the span measure

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Per-axis 1D basis tables at the quadrature points of every element.
struct AxisTabulation {
  int npoints = 0;               ///< points per element
  std::vector<double> points;    // [element][q]
  std::vector<double> weights;   // [element][q]
  std::vector<BasisTable> basis; // [element][q]

  const BasisTable& table(int element, int q) const {
    return basis[static_cast<size_t>(element * npoints + q)];
  }
};

class TensorSpace {
 public:
  TensorSpace() = default;

  /// Uniform open knot vectors per axis, unclamped on periodic axes.
  static TensorSpace build(std::span<const AxisSpec> axes, int dof_per_node);

  /// Explicit knot vectors. periodic[d] is -1 for an open axis or the
  /// continuity k the (already unclamped) knot vector carries.
  static TensorSpace from_knots(std::vector<KnotVector> knots,
                                std::vector<int> periodic, int dof_per_node);

  static TensorSpace from_patch(const NurbsPatch& patch, int dof_per_node);

  int dim() const noexcept { return static_cast<int>(axes_.size()); }
  int dof_per_node() const noexcept { return dof_per_node_; }
  const KnotVector& knots(int axis) const { return axes_[static_cast<size_t>(axis)].kv; }
  int degree(int axis) const { return knots(axis).degree(); }
  bool periodic(int axis) const { return axes_[static_cast<size_t>(axis)].k >= 0; }
  int periodic_continuity(int axis) const { return axes_[static_cast<size_t>(axis)].k; }
  /// Basis functions of the (unclamped) knot vector, n+1.
  int clamped_count(int axis) const { return knots(axis).basis_count(); }
  /// Distinct functions after periodic identification.
  int unique_count(int axis) const { return axes_[static_cast<size_t>(axis)].unique; }
  std::array<int, kMaxDim> unique_counts() const;
  std::array<int, kMaxDim> clamped_counts() const;

  int node_count() const;
  int dof_count() const { return node_count() * dof_per_node_; }

  int element_count(int axis) const {
    return static_cast<int>(axes_[static_cast<size_t>(axis)].spans.size());
  }
  std::array<int, kMaxDim> element_counts() const;
  int element_count() const;
  /// Knot span index of element ordinal e on an axis.
  int span(int axis, int e) const {
    return axes_[static_cast<size_t>(axis)].spans[static_cast<size_t>(e)];
  }

  /// All elements, lexicographic with the last dimension fastest.
  std::vector<ElementId> elements() const;
  /// Flat element ordinal (same ordering as elements()).
  int element_ordinal(const ElementId& e) const;

  /// Tensor Gauss-Legendre rule with p_d + 1 + extra points per dimension.
  QuadratureRule quadrature_rule(const ElementId& e, int extra = 0) const;

  /// Basis tables at quadrature points for every element of an axis.
  AxisTabulation tabulate(int axis, int nderiv, int extra = 0) const;

  /// Wraps a clamped index on an axis into the unique numbering.
  int wrap(int axis, int i) const;
  /// Flat node index from per-axis clamped indices (wrapped on periodic axes).
  int node_index(std::span<const int> indices) const;
  /// Flat dof index: component fastest, then the last axis.
  int global_index(std::span<const int> indices, int component) const;
  /// Per-axis unique indices of flat node index.
  std::array<int, kMaxDim> node_multi_index(int node) const;

  /// Nodes of an element, local ordering lexicographic with the last axis
  /// fastest (matches tensor_bspline).
  void element_nodes(const ElementId& e, std::vector<int>& nodes) const;
  /// Clamped (unwrapped) flat function indices of an element, for geometry.
  void element_functions(const ElementId& e, std::vector<int>& functions) const;
  int local_count() const;

  /// Unique indices adjacent to unique index a on an axis, sorted.
  std::vector<int> axis_stencil(int axis, int a) const;
  /// Flat node indices adjacent to node multi-index A, sorted.
  std::vector<int> tensor_stencil(std::span<const int> node) const;

 private:
  struct Axis {
    KnotVector kv;
    int k = -1;
    int unique = 0;
    std::vector<int> spans;
  };
  static Axis make_axis(KnotVector kv, int k);

  std::vector<Axis> axes_;
  int dof_per_node_ = 1;
};

}  // namespace iga
