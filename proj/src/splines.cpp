// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/splines.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "iga/error.hpp"

namespace iga {

namespace {

// Upper bound on the degree handled by the fixed-size scratch in
// eval_basis_on_span.
constexpr int kMaxDegree = 16;

}  // namespace

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 0 || degree_ > kMaxDegree)
    fail(ErrorCode::kParameter, "knot vector: degree out of range");
  const int m = last_knot();
  if (m + 1 < 2 * degree_ + 2)
    fail(ErrorCode::kParameter, "knot vector: fewer than 2p+2 knots");
  int run = 1;
  for (int i = 1; i <= m; ++i) {
    const double a = knots_[static_cast<size_t>(i - 1)];
    const double b = knots_[static_cast<size_t>(i)];
    if (!(a <= b)) {
      std::ostringstream os;
      os << "knot vector: knots not non-decreasing at index " << i;
      fail(ErrorCode::kParameter, os.str());
    }
    run = (a == b) ? run + 1 : 1;
    if (run > degree_ + 1) {
      std::ostringstream os;
      os << "knot vector: knot " << b << " repeated more than p+1 times";
      fail(ErrorCode::kParameter, os.str());
    }
  }
  if (!(domain_lo() < domain_hi()))
    fail(ErrorCode::kParameter, "knot vector: empty parametric domain");
}

bool KnotVector::is_clamped() const noexcept {
  const int p = degree_;
  const int m = last_knot();
  for (int i = 1; i <= p; ++i) {
    if (knots_[static_cast<size_t>(i)] != knots_[0]) return false;
    if (knots_[static_cast<size_t>(m - i)] != knots_[static_cast<size_t>(m)])
      return false;
  }
  return true;
}

std::vector<int> KnotVector::nonempty_spans() const {
  std::vector<int> spans;
  for (int k = degree_; k <= last(); ++k)
    if ((*this)[k] < (*this)[k + 1]) spans.push_back(k);
  return spans;
}

int find_span(const KnotVector& kv, double xi) {
  const int p = kv.degree();
  const int n = kv.last();
  if (!(xi >= kv[p] && xi <= kv[n + 1])) {
    std::ostringstream os;
    os << "find_span: xi = " << xi << " outside [" << kv[p] << ", "
       << kv[n + 1] << "]";
    fail(ErrorCode::kDomain, os.str());
  }
  if (xi == kv[n + 1]) {
    int k = n;
    while (kv[k] == kv[k + 1]) --k;
    return k;
  }
  const auto knots = kv.knots();
  const auto it = std::upper_bound(knots.begin() + p, knots.begin() + n + 2, xi);
  return static_cast<int>(it - knots.begin()) - 1;
}

// Triangular in-span scheme for basis values and derivatives (the
// DersBasisFuns construction): the degree-0..p values are tabulated once and
// derivatives are formed from differences of lower-degree columns.
void eval_basis_on_span(const KnotVector& kv, int span, double xi, int nderiv,
                        BasisTable& out) {
  const int p = kv.degree();
  if (nderiv < 0 || nderiv > kMaxDerivOrder)
    fail(ErrorCode::kParameter, "eval_basis: nderiv must be in 0..3");
  out.span = span;
  out.degree = p;
  out.nderiv = nderiv;
  out.rows.assign(static_cast<size_t>((nderiv + 1) * (p + 1)), 0.0);

  constexpr int N = kMaxDegree + 1;
  std::array<std::array<double, N>, N> ndu{};
  std::array<double, N> left{}, right{};
  std::array<std::array<double, N>, 2> a{};

  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - kv[span + 1 - j];
    right[j] = kv[span + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  auto at = [&](int k, int j) -> double& {
    return out.rows[static_cast<size_t>(k * (p + 1) + j)];
  };
  for (int j = 0; j <= p; ++j) at(0, j) = ndu[j][p];

  const int top = std::min(nderiv, p);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= top; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      at(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= top; ++k) {
    for (int j = 0; j <= p; ++j) at(k, j) *= factor;
    factor *= (p - k);
  }
}

BasisTable eval_basis(const KnotVector& kv, double xi, int nderiv) {
  BasisTable table;
  eval_basis_on_span(kv, find_span(kv, xi), xi, nderiv, table);
  return table;
}

namespace {

void check_unclamp_args(const KnotVector& kv, int k) {
  const int p = kv.degree();
  if (k < 0 || k > p - 1) {
    std::ostringstream os;
    os << "unclamp: continuity k = " << k << " outside [0, " << p - 1 << "]";
    fail(ErrorCode::kParameter, os.str());
  }
  if (!kv.is_clamped())
    fail(ErrorCode::kPrecondition, "unclamp: knot vector is not clamped");
}

}  // namespace

KnotVector unclamp_knots(const KnotVector& kv, int k) {
  check_unclamp_args(kv, k);
  const int n = kv.last();
  const int p = kv.degree();
  const int m = n + p + 1;
  std::vector<double> U(kv.knots().begin(), kv.knots().end());
  for (int i = 0; i <= k; ++i) {
    U[k - i] = U[p] - U[n + 1] + U[n - i];
    U[m - k + i] = U[n + 1] - U[p] + U[p + i + 1];
  }
  return KnotVector(std::move(U), p);
}

KnotVector unclamp_curve(const KnotVector& kv, int k, std::span<double> Pw,
                         int stride) {
  check_unclamp_args(kv, k);
  const int n = kv.last();
  const int p = kv.degree();
  const int m = n + p + 1;
  if (stride < 1 ||
      Pw.size() != static_cast<size_t>((n + 1) * stride))
    fail(ErrorCode::kParameter, "unclamp_curve: control point array size");

  auto point = [&](int j) { return Pw.subspan(static_cast<size_t>(j * stride),
                                              static_cast<size_t>(stride)); };
  std::vector<double> U(kv.knots().begin(), kv.knots().end());

  for (int i = 0; i <= k; ++i) U[k - i] = U[p] - U[n + 1] + U[n - i];
  for (int i = p - k - 1; i <= p - 2; ++i) {
    for (int j = i; j >= 0; --j) {
      const double den = U[p + j + 1] - U[p + j - i - 1];
      const double alpha = (U[p] - U[p + j - i - 1]) / den;
      if (den == 0.0 || alpha == 1.0)
        fail(ErrorCode::kDegenerate, "unclamp_curve: zero denominator at left end");
      auto Pj = point(j);
      auto Pj1 = point(j + 1);
      for (int c = 0; c < stride; ++c)
        Pj[c] = (Pj[c] - alpha * Pj1[c]) / (1.0 - alpha);
    }
  }

  for (int i = 0; i <= k; ++i) U[m - k + i] = U[n + 1] - U[p] + U[p + i + 1];
  for (int i = p - k - 1; i <= p - 2; ++i) {
    for (int j = i; j >= 0; --j) {
      const double den = U[n - j + i + 2] - U[n - j];
      const double alpha = (U[n + 1] - U[n - j]) / den;
      if (den == 0.0 || alpha == 0.0)
        fail(ErrorCode::kDegenerate, "unclamp_curve: zero denominator at right end");
      auto Pj = point(n - j);
      auto Pj1 = point(n - j - 1);
      for (int c = 0; c < stride; ++c)
        Pj[c] = (Pj[c] - (1.0 - alpha) * Pj1[c]) / alpha;
    }
  }
  return KnotVector(std::move(U), p);
}

Stencil basis_stencil(const KnotVector& kv, int i) {
  const int n = kv.last();
  const int p = kv.degree();
  const int m = kv.last_knot();
  if (i < 0 || i > n) {
    std::ostringstream os;
    os << "basis_stencil: index " << i << " outside [0, " << n << "]";
    fail(ErrorCode::kIndex, os.str());
  }
  int k = i;
  while (k < m && kv[k] == kv[k + 1]) ++k;
  int l = k - p;
  k = i + p + 1;
  while (k > 0 && kv[k] == kv[k - 1]) --k;
  int r = k - 1;
  return {std::max(l, 0), std::min(r, n)};
}

KnotVector uniform_open_knots(int elements, int degree, int continuity,
                              double lo, double hi) {
  if (elements < 1) fail(ErrorCode::kParameter, "knots: need at least one element");
  if (degree < 0) fail(ErrorCode::kParameter, "knots: negative degree");
  // Degree 0 is discontinuous by construction and ignores `continuity`.
  if (degree > 0 && (continuity < 0 || continuity > degree - 1))
    fail(ErrorCode::kParameter, "knots: continuity outside [0, p-1]");
  if (!(lo < hi)) fail(ErrorCode::kParameter, "knots: empty interval");
  const int mult = degree == 0 ? 1 : degree - continuity;
  std::vector<double> U;
  U.reserve(static_cast<size_t>(2 * (degree + 1) + (elements - 1) * mult));
  for (int r = 0; r <= degree; ++r) U.push_back(lo);
  for (int e = 1; e < elements; ++e) {
    // Bitwise-identical repeats: compute the value once, push it mult times.
    const double x = lo + (hi - lo) * static_cast<double>(e) /
                              static_cast<double>(elements);
    for (int r = 0; r < mult; ++r) U.push_back(x);
  }
  for (int r = 0; r <= degree; ++r) U.push_back(hi);
  return KnotVector(std::move(U), degree);
}

void eval_curve(const KnotVector& kv, std::span<const double> Pw, int stride,
                double xi, std::span<double> out) {
  const BasisTable b = eval_basis(kv, xi, 0);
  const int p = kv.degree();
  std::vector<double> acc(static_cast<size_t>(stride), 0.0);
  for (int a = 0; a <= p; ++a) {
    const int j = b.span - p + a;
    for (int c = 0; c < stride; ++c)
      acc[static_cast<size_t>(c)] += b(0, a) * Pw[static_cast<size_t>(j * stride + c)];
  }
  const double w = acc[static_cast<size_t>(stride - 1)];
  for (int c = 0; c + 1 < stride; ++c) out[static_cast<size_t>(c)] = acc[static_cast<size_t>(c)] / w;
}

}  // namespace iga
