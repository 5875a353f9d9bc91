// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// One-dimensional B-spline kernel: knot vectors, span search, basis
// evaluation with derivatives, periodic unclamping and adjacency stencils.
//
// Basis indices are 0-based. A knot vector of length m+1 and degree p carries
// n+1 = m-p basis functions N_0..N_n on the domain [U[p], U[n+1]].

#pragma once

#include <span>
#include <vector>

namespace iga {

inline constexpr int kMaxDerivOrder = 3;

class KnotVector {
 public:
  KnotVector() = default;

  /// Validates: non-decreasing, at least 2p+2 knots, no knot repeated more
  /// than p+1 times, non-empty domain. Throws Error(kParameter) otherwise.
  KnotVector(std::vector<double> knots, int degree);

  int degree() const noexcept { return degree_; }
  /// n + 1 in the usual notation.
  int basis_count() const noexcept {
    return static_cast<int>(knots_.size()) - degree_ - 1;
  }
  /// Index of the last basis function (n).
  int last() const noexcept { return basis_count() - 1; }
  /// Index of the last knot (m).
  int last_knot() const noexcept { return static_cast<int>(knots_.size()) - 1; }

  double operator[](int i) const { return knots_[static_cast<size_t>(i)]; }
  std::span<const double> knots() const noexcept { return knots_; }

  double domain_lo() const { return knots_[static_cast<size_t>(degree_)]; }
  double domain_hi() const { return knots_[static_cast<size_t>(basis_count())]; }

  /// First and last degree+1 knots are repeated.
  bool is_clamped() const noexcept;

  /// Spans k in [p, n] with U[k] < U[k+1], i.e. the elements, in order.
  std::vector<int> nonempty_spans() const;

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  std::vector<double> knots_;
  int degree_ = 0;
};

/// Non-vanishing basis functions and their derivatives on one span.
/// Row r holds d^r N / dxi^r for the p+1 functions N_{span-p}..N_{span}.
struct BasisTable {
  int span = 0;
  int degree = 0;
  int nderiv = 0;
  std::vector<double> rows;  // (nderiv+1) x (degree+1), row-major

  double operator()(int order, int local) const {
    return rows[static_cast<size_t>(order * (degree + 1) + local)];
  }
  std::span<const double> row(int order) const {
    return std::span<const double>(rows).subspan(
        static_cast<size_t>(order * (degree + 1)),
        static_cast<size_t>(degree + 1));
  }
};

struct Stencil {
  int left = 0;
  int right = 0;
};

/// Returns k with U[k] <= xi < U[k+1]. At xi == U[n+1] the last non-empty
/// span is returned. Throws Error(kDomain) outside [U[p], U[n+1]].
int find_span(const KnotVector& kv, double xi);

/// Evaluates the p+1 non-vanishing functions at xi and derivatives up to
/// nderiv (0..3). Orders above p are identically zero.
BasisTable eval_basis(const KnotVector& kv, double xi, int nderiv);

/// As above on a known span; no domain check. `out` is resized as needed.
void eval_basis_on_span(const KnotVector& kv, int span, double xi, int nderiv,
                        BasisTable& out);

/// Unclamps both ends of a clamped knot vector for C^k periodicity,
/// 0 <= k <= p-1. Interior knots are untouched.
KnotVector unclamp_knots(const KnotVector& kv, int continuity);

/// Unclamps a curve: knots as unclamp_knots, and homogeneous control points
/// (stride doubles per point, weight last) rewritten so that the curve is
/// unchanged on the original domain. Throws Error(kDegenerate) on a zero
/// denominator in the point recurrences.
KnotVector unclamp_curve(const KnotVector& kv, int continuity,
                         std::span<double> points, int stride);

/// Leftmost and rightmost indices of basis functions whose support overlaps
/// the support of N_i, clipped to [0, n].
Stencil basis_stencil(const KnotVector& kv, int i);

/// Uniform open knot vector with `elements` spans on [lo, hi], degree p, and
/// interior knots repeated p - continuity times.
KnotVector uniform_open_knots(int elements, int degree, int continuity,
                              double lo, double hi);

/// Evaluates a curve given homogeneous control points (stride doubles each,
/// weight last) and writes the Cartesian point (stride-1 values) to `out`.
void eval_curve(const KnotVector& kv, std::span<const double> points,
                int stride, double xi, std::span<double> out);

}  // namespace iga
