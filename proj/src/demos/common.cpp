// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "iga/demos.hpp"
#include "iga/error.hpp"

namespace iga {

Vec3 node_point(const TensorSpace& space, const NurbsPatch& patch, int node) {
  const auto idx = space.node_multi_index(node);
  const auto counts = patch.counts();
  int B = 0;
  for (int d = 0; d < patch.dim; ++d) B = B * counts[d] + idx[d];
  Vec3 x{};
  for (int c = 0; c < patch.dim; ++c) x[c] = patch.coord(B, c);
  return x;
}

double jacobian_fd_error(const ResidualFn& residual, const CsrMatrix& J,
                         std::span<const double> U, std::span<const double> v, double h) {
  const size_t n = U.size();
  if (v.size() != n || J.rows() != static_cast<int>(n))
    fail(ErrorCode::kParameter, "jacobian check: size mismatch");
  std::vector<double> up(n), um(n), rp(n), rm(n), jv(n);
  for (size_t i = 0; i < n; ++i) {
    up[i] = U[i] + h * v[i];
    um[i] = U[i] - h * v[i];
  }
  residual(up, rp);
  residual(um, rm);
  J.multiply(v, jv);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double fd = (rp[i] - rm[i]) / (2 * h);
    num += (fd - jv[i]) * (fd - jv[i]);
    den += jv[i] * jv[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace iga
