// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Element-partitioned Galerkin assembly. Workers stand in for distributed
// ranks: each owns a contiguous block of elements and, by the left-most
// element rule, a set of degrees of freedom. Contributions to rows owned by
// another worker go through a per-worker cache that is merged after the
// element loop in ascending worker order.

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "iga/geometry.hpp"
#include "iga/space.hpp"
#include "iga/sparse.hpp"
#include "iga/workers.hpp"

namespace iga {

struct Partition {
  int workers = 1;
  std::array<int, kMaxDim> grid{1, 1, 1};
  /// Per axis: first element of each grid slot, followed by the element count.
  std::array<std::vector<int>, kMaxDim> starts;
  std::vector<int> node_owner;                  ///< per flat node
  std::vector<std::vector<int>> owned_nodes;    ///< per worker, sorted
  std::vector<std::vector<int>> local_nodes;    ///< per worker, owned + ghosts, sorted
  std::vector<std::vector<ElementId>> elements; ///< per worker, lexicographic

  std::array<int, kMaxDim> grid_coords(int worker) const;
  int worker_of(const ElementId& e) const;

  struct Load {
    int elements = 0;
    int owned_dofs = 0;
    int local_dofs = 0;
  };
  std::vector<Load> load_report(int dof_per_node) const;
};

/// Splits the elements into a worker grid with per-axis factors following
/// the element counts, contiguous near-equal blocks per axis, and assigns
/// each node to the largest worker whose first element lies in the node's
/// support (default: the owner of the first support element).
/// Throws Error(kParameter) if the workers cannot all receive elements.
Partition make_partition(const TensorSpace& space, int workers);

/// Globally indexed vector with per-worker ghosted views and per-worker
/// caches of contributions to rows owned elsewhere.
class PartitionedVector {
 public:
  PartitionedVector() = default;
  PartitionedVector(const Partition& partition, int dof_per_node);

  int size() const noexcept { return static_cast<int>(global_.size()); }
  int dof_per_node() const noexcept { return dof_per_node_; }
  const Partition& partition() const { return *partition_; }

  std::span<double> values() noexcept { return global_; }
  std::span<const double> values() const noexcept { return global_; }

  /// Ghosted view of worker w, laid out as local_nodes[w] x dof_per_node.
  std::span<const double> local(int w) const { return local_[static_cast<size_t>(w)]; }
  /// Position of a global node in worker w's view, or -1.
  int local_position(int w, int node) const;

  int owner(int dof) const {
    return partition_->node_owner[static_cast<size_t>(dof / dof_per_node_)];
  }

  /// Copies current global values into every worker's ghosted view.
  void scatter_local();

  void cache_add(int w, int dof, double v);
  std::size_t cached() const;
  /// Adds cached contributions in ascending worker order and clears caches.
  void flush();

  void set_zero();

 private:
  const Partition* partition_ = nullptr;
  int dof_per_node_ = 1;
  std::vector<double> global_;
  std::vector<std::vector<double>> local_;
  std::vector<std::vector<std::pair<int, double>>> cache_;
};

/// Basis data and input fields at one quadrature point.
struct PointData {
  const ShapeBundle& shape;
  const Vec3& x;
  const ElementId& element;
  int point = 0;
  int dof_per_node = 1;
  /// Element coefficients of each input field, nen x dof_per_node.
  std::span<const std::vector<double>> coeffs;

  int nen() const { return shape.nen; }
  int dim() const { return shape.dim; }
  double value(int field, int comp = 0) const;
  Vec3 grad(int field, int comp = 0) const;
  Mat3 hess(int field, int comp = 0) const;
  double laplacian(int field, int comp = 0) const;
};

/// F_q: nen x dof_per_node, index A * dof_per_node + c.
using VectorIntegrand = std::function<void(const PointData&, std::span<double>)>;
/// K_q: (nen*dpn) x (nen*dpn), row-major.
using MatrixIntegrand = std::function<void(const PointData&, std::span<double>)>;
using ScalarIntegrand = std::function<double(const PointData&)>;

class Assembler {
 public:
  /// Geometry must be isoparametric with the space (identical knot
  /// vectors); otherwise Error(kParameter). `order` is the highest spatial
  /// derivative the integrands read; `extra_points` raises the quadrature.
  Assembler(const TensorSpace& space, const NurbsPatch& patch,
            const Partition& partition, int order, int extra_points = 0);
  ~Assembler();

  const TensorSpace& space() const { return *space_; }
  const Partition& partition() const { return *partition_; }
  WorkerTeam& team() { return *team_; }

  /// Scatters each input, then assembles F = sum_e sum_q F_q J_q w_q.
  /// Throws Error(kAssembly) on non-finite integrand output.
  void form_vector(std::span<PartitionedVector* const> fields,
                   const VectorIntegrand& integrand, PartitionedVector& F);
  /// K must carry the preallocated pattern; values are overwritten.
  void form_matrix(std::span<PartitionedVector* const> fields,
                   const MatrixIntegrand& integrand, CsrMatrix& K);
  /// Integral of a scalar over the patch, summed in ascending worker order.
  double integrate(std::span<PartitionedVector* const> fields,
                   const ScalarIntegrand& integrand);

 private:
  struct Scratch;
  template <class Body>
  void element_loop(std::span<PartitionedVector* const> fields, Body&& body);

  const TensorSpace* space_;
  const NurbsPatch* patch_;
  const Partition* partition_;
  int order_;
  std::array<AxisTabulation, kMaxDim> tab_;
  std::unique_ptr<WorkerTeam> team_;
};

/// Matrix with the tensor adjacency pattern expanded to dof blocks.
CsrMatrix preallocate(const TensorSpace& space);

struct DirichletValue {
  int dof = 0;
  double value = 0.0;
};

/// Symmetric elimination: known values moved to the right-hand side,
/// constrained rows and columns zeroed, unit diagonal, F[dof] = value.
/// Throws Error(kParameter) on conflicting duplicates.
void apply_dirichlet(CsrMatrix& K, std::span<double> F,
                     std::span<const DirichletValue> bc);

/// Nodes on the face {clamped index 0 (side 0) or n (side 1)} of a
/// non-periodic axis, sorted.
std::vector<int> face_nodes(const TensorSpace& space, int axis, int side);

}  // namespace iga
