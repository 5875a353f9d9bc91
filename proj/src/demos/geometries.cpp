// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/geometries.hpp"

#include <cmath>
#include <vector>

#include "iga/error.hpp"

namespace iga {

NurbsPatch box_patch(const TensorSpace& space, std::span<const double> lo,
                     std::span<const double> hi) {
  const int dim = space.dim();
  if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
    fail(ErrorCode::kParameter, "box_patch: bounds dimension mismatch");
  NurbsPatch patch;
  patch.dim = dim;
  std::array<std::vector<double>, kMaxDim> g;
  for (int d = 0; d < dim; ++d) {
    const KnotVector& kv = space.knots(d);
    const int p = kv.degree();
    if (p < 1) fail(ErrorCode::kParameter, "box_patch: degree must be at least 1");
    patch.axes.push_back(kv);
    patch.periodic.push_back(space.periodic(d) ? space.periodic_continuity(d) : -1);
    const double a = kv.domain_lo(), b = kv.domain_hi();
    for (int i = 0; i <= kv.last(); ++i) {
      double s = 0.0;
      for (int j = 1; j <= p; ++j) s += kv[i + j];
      const double t = (s / p - a) / (b - a);
      g[d].push_back(lo[static_cast<size_t>(d)] + t * (hi[static_cast<size_t>(d)] - lo[static_cast<size_t>(d)]));
    }
  }
  for (int d = dim; d < kMaxDim; ++d) g[d] = {0.0};
  for (double x : g[0])
    for (double y : g[1])
      for (double z : g[2]) {
        const double c[3] = {x, y, z};
        for (int d = 0; d < dim; ++d) patch.points.push_back(c[d]);
        patch.points.push_back(1.0);
      }
  patch.validate();
  return patch;
}

NurbsPatch insert_knot(const NurbsPatch& patch, int axis, double u) {
  if (axis < 0 || axis >= patch.dim) fail(ErrorCode::kIndex, "insert_knot: axis out of range");
  if (patch.periodic[static_cast<size_t>(axis)] >= 0)
    fail(ErrorCode::kParameter, "insert_knot: axis is periodic");
  const KnotVector& kv = patch.axes[static_cast<size_t>(axis)];
  const int p = kv.degree();
  if (!(u > kv.domain_lo() && u < kv.domain_hi()))
    fail(ErrorCode::kDomain, "insert_knot: knot outside the open domain");
  const int k = find_span(kv, u);
  std::vector<double> U(kv.knots().begin(), kv.knots().end());
  U.insert(U.begin() + k + 1, u);

  const auto counts = patch.counts();
  std::array<int, kMaxDim> nc = counts;
  nc[axis] += 1;
  const int st = patch.stride();
  // Strides of the lexicographic layout (last axis fastest).
  auto flat = [](const std::array<int, kMaxDim>& c, int i, int j, int l) {
    return (i * c[1] + j) * c[2] + l;
  };
  NurbsPatch out = patch;
  out.axes[static_cast<size_t>(axis)] = KnotVector(U, p);
  out.points.assign(static_cast<size_t>(nc[0] * nc[1] * nc[2] * st), 0.0);
  for (int i = 0; i < nc[0]; ++i)
    for (int j = 0; j < nc[1]; ++j)
      for (int l = 0; l < nc[2]; ++l) {
        std::array<int, kMaxDim> idx{i, j, l};
        const int r = idx[axis];
        auto src = [&](int q) {
          std::array<int, kMaxDim> s = idx;
          s[axis] = q;
          return &patch.points[static_cast<size_t>(flat(counts, s[0], s[1], s[2]) * st)];
        };
        double* dst = &out.points[static_cast<size_t>(flat(nc, i, j, l) * st)];
        double alpha;
        if (r <= k - p)
          alpha = 1.0;
        else if (r >= k + 1)
          alpha = 0.0;
        else
          alpha = (u - kv[r]) / (kv[r + p] - kv[r]);
        const double* a = r <= counts[axis] - 1 ? src(r) : nullptr;
        const double* b = r >= 1 ? src(r - 1) : nullptr;
        for (int c = 0; c < st; ++c)
          dst[c] = (alpha > 0.0 ? alpha * a[c] : 0.0) + (alpha < 1.0 ? (1.0 - alpha) * b[c] : 0.0);
      }
  out.validate();
  return out;
}

NurbsPatch quarter_annulus(int radial_elements, int angular_elements, double r_in,
                           double r_out) {
  if (radial_elements < 1 || angular_elements < 1)
    fail(ErrorCode::kParameter, "quarter_annulus: need at least one element per axis");
  if (!(r_in > 0.0 && r_out > r_in)) fail(ErrorCode::kParameter, "quarter_annulus: bad radii");
  NurbsPatch patch;
  patch.dim = 2;
  patch.axes = {KnotVector({0, 0, 0, 1, 1, 1}, 2), KnotVector({0, 0, 0, 1, 1, 1}, 2)};
  patch.periodic = {-1, -1};
  const double w = std::sqrt(0.5);
  const double arc[3][3] = {{1, 0, 1}, {1, 1, w}, {0, 1, 1}};
  const double radii[3] = {r_in, 0.5 * (r_in + r_out), r_out};
  for (double r : radii)
    for (const auto& a : arc) patch.points.insert(patch.points.end(), {r * a[0] * a[2], r * a[1] * a[2], a[2]});
  const int ne[2] = {radial_elements, angular_elements};
  for (int d = 0; d < 2; ++d)
    for (int e = 1; e < ne[d]; ++e)
      patch = insert_knot(patch, d, static_cast<double>(e) / ne[d]);
  return patch;
}

}  // namespace iga
