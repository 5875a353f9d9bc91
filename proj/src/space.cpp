// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "iga/error.hpp"
#include "iga/geometry.hpp"

namespace iga {

namespace {

// P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, p0};
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) fail(ErrorCode::kParameter, "gauss_legendre: need at least one point");
  nodes.assign(static_cast<size_t>(n), 0.0);
  weights.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pm] = legendre(n, x);
      const double dx = pn / (n * (x * pn - pm) / (x * x - 1.0));
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [pn, pm] = legendre(n, x);
    const double dp = n * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<size_t>(i)] = -x;
    nodes[static_cast<size_t>(n - 1 - i)] = x;
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<size_t>(n / 2)] = 0.0;
}

TensorSpace::Axis TensorSpace::make_axis(KnotVector kv, int k) {
  Axis ax;
  const int count = kv.basis_count();
  if (k >= 0) {
    if (k > kv.degree() - 1)
      fail(ErrorCode::kParameter, "space: periodic continuity must be in [0, p-1]");
    if (count < 2 * (k + 1))
      fail(ErrorCode::kParameter, "space: too few elements for the periodic continuity");
  }
  ax.k = k;
  ax.unique = k >= 0 ? count - (k + 1) : count;
  ax.spans = kv.nonempty_spans();
  ax.kv = std::move(kv);
  return ax;
}

TensorSpace TensorSpace::build(std::span<const AxisSpec> specs, int dof_per_node) {
  if (specs.empty() || specs.size() > static_cast<size_t>(kMaxDim))
    fail(ErrorCode::kParameter, "space: dimension must be 1..3");
  if (dof_per_node < 1) fail(ErrorCode::kParameter, "space: dof_per_node must be >= 1");
  TensorSpace s;
  s.dof_per_node_ = dof_per_node;
  for (const AxisSpec& a : specs) {
    if (a.degree < 1) fail(ErrorCode::kParameter, "space: degree must be >= 1");
    if (a.continuity < 0 || a.continuity > a.degree - 1) {
      std::ostringstream os;
      os << "space: continuity " << a.continuity << " outside [0, " << a.degree - 1 << "]";
      fail(ErrorCode::kParameter, os.str());
    }
    KnotVector kv = uniform_open_knots(a.elements, a.degree, a.continuity, a.lo, a.hi);
    int k = -1;
    if (a.periodic) {
      k = a.periodic_continuity < 0 ? a.continuity : a.periodic_continuity;
      if (k > a.degree - 1)
        fail(ErrorCode::kParameter, "space: periodic continuity must be in [0, p-1]");
      kv = unclamp_knots(kv, k);
    }
    s.axes_.push_back(make_axis(std::move(kv), k));
  }
  return s;
}

TensorSpace TensorSpace::from_knots(std::vector<KnotVector> knots,
                                    std::vector<int> periodic, int dof_per_node) {
  if (knots.empty() || knots.size() > static_cast<size_t>(kMaxDim))
    fail(ErrorCode::kParameter, "space: dimension must be 1..3");
  if (!periodic.empty() && periodic.size() != knots.size())
    fail(ErrorCode::kParameter, "space: periodic flags must match dimension");
  if (dof_per_node < 1) fail(ErrorCode::kParameter, "space: dof_per_node must be >= 1");
  TensorSpace s;
  s.dof_per_node_ = dof_per_node;
  for (size_t d = 0; d < knots.size(); ++d)
    s.axes_.push_back(make_axis(std::move(knots[d]), periodic.empty() ? -1 : periodic[d]));
  return s;
}

TensorSpace TensorSpace::from_patch(const NurbsPatch& patch, int dof_per_node) {
  patch.validate();
  return from_knots(patch.axes, patch.periodic, dof_per_node);
}

std::array<int, kMaxDim> TensorSpace::unique_counts() const {
  std::array<int, kMaxDim> c{1, 1, 1};
  for (int d = 0; d < dim(); ++d) c[d] = unique_count(d);
  return c;
}

std::array<int, kMaxDim> TensorSpace::clamped_counts() const {
  std::array<int, kMaxDim> c{1, 1, 1};
  for (int d = 0; d < dim(); ++d) c[d] = clamped_count(d);
  return c;
}

int TensorSpace::node_count() const {
  int n = 1;
  for (int d = 0; d < dim(); ++d) n *= unique_count(d);
  return n;
}

std::array<int, kMaxDim> TensorSpace::element_counts() const {
  std::array<int, kMaxDim> c{1, 1, 1};
  for (int d = 0; d < dim(); ++d) c[d] = element_count(d);
  return c;
}

int TensorSpace::element_count() const {
  int n = 1;
  for (int d = 0; d < dim(); ++d) n *= element_count(d);
  return n;
}

std::vector<ElementId> TensorSpace::elements() const {
  const auto ec = element_counts();
  std::vector<ElementId> out;
  out.reserve(static_cast<size_t>(element_count()));
  for (int i = 0; i < ec[0]; ++i)
    for (int j = 0; j < ec[1]; ++j)
      for (int k = 0; k < ec[2]; ++k) out.push_back({i, j, k});
  return out;
}

int TensorSpace::element_ordinal(const ElementId& e) const {
  const auto ec = element_counts();
  return (e[0] * ec[1] + e[1]) * ec[2] + e[2];
}

QuadratureRule TensorSpace::quadrature_rule(const ElementId& e, int extra) const {
  QuadratureRule rule;
  rule.dim = dim();
  std::array<std::vector<double>, kMaxDim> px, pw;
  std::vector<double> gx, gw;
  for (int d = 0; d < dim(); ++d) {
    const int n = degree(d) + 1 + extra;
    gauss_legendre(n, gx, gw);
    const int s = span(d, e[d]);
    const double a = knots(d)[s];
    const double b = knots(d)[s + 1];
    const double half = 0.5 * (b - a);
    rule.counts[d] = n;
    for (int q = 0; q < n; ++q) {
      px[d].push_back(a + half * (gx[static_cast<size_t>(q)] + 1.0));
      pw[d].push_back(half * gw[static_cast<size_t>(q)]);
    }
  }
  for (int d = dim(); d < kMaxDim; ++d) {
    px[d] = {0.0};
    pw[d] = {1.0};
  }
  for (int i = 0; i < rule.counts[0]; ++i)
    for (int j = 0; j < rule.counts[1]; ++j)
      for (int k = 0; k < rule.counts[2]; ++k) {
        const std::array<int, kMaxDim> q{i, j, k};
        double w = 1.0;
        for (int d = 0; d < dim(); ++d) {
          rule.points.push_back(px[d][static_cast<size_t>(q[d])]);
          w *= pw[d][static_cast<size_t>(q[d])];
        }
        rule.weights.push_back(w);
      }
  return rule;
}

AxisTabulation TensorSpace::tabulate(int axis, int nderiv, int extra) const {
  AxisTabulation tab;
  const KnotVector& kv = knots(axis);
  const int n = kv.degree() + 1 + extra;
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  tab.npoints = n;
  const int ne = element_count(axis);
  tab.points.reserve(static_cast<size_t>(ne * n));
  tab.weights.reserve(static_cast<size_t>(ne * n));
  tab.basis.resize(static_cast<size_t>(ne * n));
  for (int e = 0; e < ne; ++e) {
    const int s = span(axis, e);
    const double a = kv[s];
    const double half = 0.5 * (kv[s + 1] - a);
    for (int q = 0; q < n; ++q) {
      const double x = a + half * (gx[static_cast<size_t>(q)] + 1.0);
      tab.points.push_back(x);
      tab.weights.push_back(half * gw[static_cast<size_t>(q)]);
      eval_basis_on_span(kv, s, x, nderiv, tab.basis[static_cast<size_t>(e * n + q)]);
    }
  }
  return tab;
}

int TensorSpace::wrap(int axis, int i) const {
  if (i < 0 || i >= clamped_count(axis)) {
    std::ostringstream os;
    os << "space: index " << i << " outside [0, " << clamped_count(axis) - 1
       << "] on axis " << axis;
    fail(ErrorCode::kIndex, os.str());
  }
  const int u = unique_count(axis);
  return periodic(axis) ? i % u : i;
}

int TensorSpace::node_index(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != dim())
    fail(ErrorCode::kIndex, "space: index dimension mismatch");
  int g = 0;
  for (int d = 0; d < dim(); ++d)
    g = g * unique_count(d) + wrap(d, indices[static_cast<size_t>(d)]);
  return g;
}

int TensorSpace::global_index(std::span<const int> indices, int component) const {
  if (component < 0 || component >= dof_per_node_)
    fail(ErrorCode::kIndex, "space: component out of range");
  return node_index(indices) * dof_per_node_ + component;
}

std::array<int, kMaxDim> TensorSpace::node_multi_index(int node) const {
  std::array<int, kMaxDim> idx{0, 0, 0};
  for (int d = dim() - 1; d >= 0; --d) {
    idx[d] = node % unique_count(d);
    node /= unique_count(d);
  }
  return idx;
}

int TensorSpace::local_count() const {
  int n = 1;
  for (int d = 0; d < dim(); ++d) n *= degree(d) + 1;
  return n;
}

void TensorSpace::element_nodes(const ElementId& e, std::vector<int>& nodes) const {
  nodes.clear();
  std::array<int, kMaxDim> first{0, 0, 0}, cnt{1, 1, 1};
  for (int d = 0; d < dim(); ++d) {
    first[d] = span(d, e[d]) - degree(d);
    cnt[d] = degree(d) + 1;
  }
  const int u1 = dim() > 1 ? unique_count(1) : 1;
  const int u2 = dim() > 2 ? unique_count(2) : 1;
  for (int a = 0; a < cnt[0]; ++a) {
    const int i0 = wrap(0, first[0] + a);
    for (int b = 0; b < cnt[1]; ++b) {
      const int i1 = dim() > 1 ? wrap(1, first[1] + b) : 0;
      for (int c = 0; c < cnt[2]; ++c) {
        const int i2 = dim() > 2 ? wrap(2, first[2] + c) : 0;
        nodes.push_back((i0 * u1 + i1) * u2 + i2);
      }
    }
  }
}

void TensorSpace::element_functions(const ElementId& e, std::vector<int>& functions) const {
  functions.clear();
  std::array<int, kMaxDim> first{0, 0, 0}, cnt{1, 1, 1};
  const auto cc = clamped_counts();
  for (int d = 0; d < dim(); ++d) {
    first[d] = span(d, e[d]) - degree(d);
    cnt[d] = degree(d) + 1;
  }
  for (int a = 0; a < cnt[0]; ++a)
    for (int b = 0; b < cnt[1]; ++b)
      for (int c = 0; c < cnt[2]; ++c)
        functions.push_back(((first[0] + a) * cc[1] + first[1] + b) * cc[2] + first[2] + c);
}

std::vector<int> TensorSpace::axis_stencil(int axis, int a) const {
  const int u = unique_count(axis);
  if (a < 0 || a >= u) fail(ErrorCode::kIndex, "tensor_stencil: index out of range");
  const KnotVector& kv = knots(axis);
  std::vector<int> out;
  // Every clamped representative of a contributes its stencil.
  for (int rep = a; rep < clamped_count(axis); rep += u) {
    const Stencil st = basis_stencil(kv, rep);
    for (int j = st.left; j <= st.right; ++j) out.push_back(wrap(axis, j));
    if (!periodic(axis)) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> TensorSpace::tensor_stencil(std::span<const int> node) const {
  if (static_cast<int>(node.size()) != dim())
    fail(ErrorCode::kIndex, "tensor_stencil: index dimension mismatch");
  std::array<std::vector<int>, kMaxDim> sets;
  for (int d = 0; d < dim(); ++d) sets[d] = axis_stencil(d, node[static_cast<size_t>(d)]);
  for (int d = dim(); d < kMaxDim; ++d) sets[d] = {0};
  const auto uc = unique_counts();
  std::vector<int> out;
  out.reserve(sets[0].size() * sets[1].size() * sets[2].size());
  for (int i : sets[0])
    for (int j : sets[1])
      for (int k : sets[2]) out.push_back((i * uc[1] + j) * uc[2] + k);
  return out;  // sorted: each set is sorted and the layout is lexicographic
}

}  // namespace iga
