// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "iga/error.hpp"
#include "iga/splines.hpp"
#include "oracles.hpp"

using iga::ErrorCode;
using iga::KnotVector;

namespace {

const std::vector<double> kMixed{0, 0, 0, 0, 2, 4, 4, 6, 6, 6, 8, 8, 8, 8};
const std::vector<double> kUniformCubic{0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const iga::Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

TEST_CASE("knot vector validation") {
  CHECK(code_of([] { KnotVector({0, 0, 1, 0.5, 1}, 1); }) == ErrorCode::kParameter);
  CHECK(code_of([] { KnotVector({0, 0, 0, 0, 1, 1, 1}, 1); }) == ErrorCode::kParameter);
  CHECK(code_of([] { KnotVector({0, 0, 1}, 1); }) == ErrorCode::kParameter);
  CHECK(code_of([] { KnotVector({1, 1, 1, 1}, 1); }) == ErrorCode::kParameter);
  const KnotVector kv(kMixed, 3);
  CHECK(kv.basis_count() == 10);
  CHECK(kv.last_knot() == kv.last() + kv.degree() + 1);
  CHECK(kv.nonempty_spans() == std::vector<int>{3, 4, 6, 9});
}

TEST_CASE("find_span examples and linear-scan oracle") {
  const KnotVector kv(kMixed, 3);
  CHECK(iga::find_span(kv, 3.0) == 4);
  CHECK(iga::find_span(kv, 0.0) == 3);
  CHECK(iga::find_span(kv, 8.0) == 9);
  CHECK(code_of([&] { iga::find_span(kv, -0.1); }) == ErrorCode::kDomain);
  CHECK(code_of([&] { iga::find_span(kv, 8.1); }) == ErrorCode::kDomain);
  for (int s = 0; s <= 160; ++s) {
    const double x = 8.0 * s / 160.0;
    CHECK(iga::find_span(kv, x) == oracle::linear_span(kMixed, 3, x));
  }
}

TEST_CASE("eval_basis examples") {
  const auto b1 = iga::eval_basis(KnotVector({0, 0, 1, 1}, 1), 0.25, 0);
  CHECK(b1(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(b1(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  const auto b2 = iga::eval_basis(KnotVector({0, 0, 0, 1, 1, 1}, 2), 0.5, 1);
  const double v[] = {0.25, 0.5, 0.25}, d[] = {-1, 0, 1};
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(b2(0, a) - v[a]) < 1e-15);
    CHECK(std::abs(b2(1, a) - d[a]) < 1e-14);
  }
  // Orders above p vanish.
  const auto b3 = iga::eval_basis(KnotVector({0, 0, 1, 1}, 1), 0.3, 3);
  for (int a = 0; a < 2; ++a) {
    CHECK(b3(2, a) == 0.0);
    CHECK(b3(3, a) == 0.0);
  }
}

TEST_CASE("partition of unity on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 1 + trial % 4;
    const int n = p + static_cast<int>(rng() % 12);
    const KnotVector kv(oracle::random_clamped(rng, p, n), p);
    const auto b = iga::eval_basis(kv, u(rng), 3);
    for (int r = 0; r <= 3; ++r) {
      double s = 0.0, scale = 1.0;
      for (int a = 0; a <= p; ++a) {
        s += b(r, a);
        scale = std::max(scale, std::abs(b(r, a)));
      }
      if (r == 0)
        CHECK(std::abs(s - 1.0) < 1e-13);
      else
        CHECK(std::abs(s) < 1e-11 * scale);
    }
  }
}

TEST_CASE("triangular scheme equals the literal recursion") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, worst_d = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int p = 1 + trial % 4;
    const int n = p + static_cast<int>(rng() % (21 - p));
    const auto U = oracle::random_clamped(rng, p, n);
    const KnotVector kv(U, p);
    const double x = u(rng) * 0.999;
    const auto b = iga::eval_basis(kv, x, 3);
    for (int i = 0; i <= kv.last(); ++i) {
      const int a = i - (b.span - p);
      const double want = oracle::cox_de_boor(U, i, p, x);
      const double got = (a >= 0 && a <= p) ? b(0, a) : 0.0;
      worst = std::max(worst, std::abs(got - want));
      for (int r = 1; r <= 3; ++r) {
        const double wd = oracle::cox_de_boor_deriv(U, i, p, r, x);
        const double gd = (a >= 0 && a <= p) ? b(r, a) : 0.0;
        worst_d = std::max(worst_d, std::abs(gd - wd) / std::max(1.0, std::abs(wd)));
      }
    }
  }
  CHECK(worst < 1e-13);
  CHECK(worst_d < 1e-10);
}

TEST_CASE("derivatives match central differences away from knots") {
  const std::vector<double> U{0, 0, 0, 0, 0.3, 0.5, 0.5, 0.8, 1, 1, 1, 1};
  const KnotVector kv(U, 3);
  const double hs[] = {0, 1e-5, 1e-4, 1e-3};
  const double tol[] = {0, 1e-6, 1e-5, 1e-3};
  for (double x : {0.1, 0.4, 0.65, 0.9}) {
    const auto b = iga::eval_basis(kv, x, 3);
    for (int r = 1; r <= 3; ++r) {
      const double h = hs[r];
      const auto bp = iga::eval_basis(kv, x + h, 3);
      const auto bm = iga::eval_basis(kv, x - h, 3);
      REQUIRE(bp.span == b.span);
      REQUIRE(bm.span == b.span);
      for (int a = 0; a <= 3; ++a) {
        const double fd = (bp(r - 1, a) - bm(r - 1, a)) / (2 * h);
        CHECK(std::abs(fd - b(r, a)) <= tol[r] * std::max(1.0, std::abs(b(r, a))));
      }
    }
  }
}

TEST_CASE("unclamp_knots reproduces the periodic knot vectors") {
  const KnotVector kv(kUniformCubic, 3);
  const std::vector<std::vector<double>> want{
      {-0.2, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1.2},
      {-0.4, -0.2, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1.2, 1.4},
      {-0.6, -0.4, -0.2, 0, 0.2, 0.4, 0.6, 0.8, 1, 1.2, 1.4, 1.6}};
  for (int k = 0; k < 3; ++k) {
    const KnotVector out = iga::unclamp_knots(kv, k);
    REQUIRE(out.knots().size() == want[static_cast<size_t>(k)].size());
    for (size_t i = 0; i < want[static_cast<size_t>(k)].size(); ++i) {
      const double w = want[static_cast<size_t>(k)][i];
      const double g = out.knots()[i];
      CHECK(fmt15(g) == fmt15(w));
      CHECK(std::abs(g - w) <= 4 * (std::nextafter(std::abs(w), 10.0) - std::abs(w)));
    }
  }
  CHECK(code_of([&] { iga::unclamp_knots(kv, 3); }) == ErrorCode::kParameter);
  CHECK(code_of([&] { iga::unclamp_knots(kv, -1); }) == ErrorCode::kParameter);
  const KnotVector open({-0.2, 0, 0, 0, 1, 1, 1, 1.2}, 3);
  CHECK(code_of([&] { iga::unclamp_knots(open, 0); }) == ErrorCode::kPrecondition);
}

TEST_CASE("unclamped basis wraps across the period") {
  const KnotVector kv(kUniformCubic, 3);
  for (int k = 0; k < 3; ++k) {
    const KnotVector uk = iga::unclamp_knots(kv, k);
    const int n = uk.last();
    for (double x : {0.05, 0.13, 0.19}) {
      // Functions 0..k at x agree with functions n-k..n at x + 1.
      for (int i = 0; i <= k; ++i) {
        const double a = oracle::cox_de_boor({uk.knots().begin(), uk.knots().end()}, i, 3, x);
        const double b = oracle::cox_de_boor({uk.knots().begin(), uk.knots().end()},
                                             n - k + i, 3, x + 1.0);
        CHECK(std::abs(a - b) < 1e-12);
      }
    }
  }
}

TEST_CASE("unclamp_curve leaves the curve unchanged") {
  SUBCASE("p=1 k=0 is a no-op") {
    const KnotVector kv({0, 0, 0.5, 1, 1}, 1);
    std::vector<double> P{0, 0, 1, 1, 2, 1, 3, 1, 1};
    const auto before = P;
    iga::unclamp_curve(kv, 0, P, 3);
    CHECK(P == before);
  }
  SUBCASE("straight line, cubic, all k") {
    const KnotVector kv(kUniformCubic, 3);
    for (int k = 0; k < 3; ++k) {
      std::vector<double> P;
      for (int i = 0; i < 8; ++i) {
        const double w = 1.0 + 0.1 * i;
        P.insert(P.end(), {i * w, 2.0 * i * w, w});
      }
      const auto orig = P;
      const KnotVector uk = iga::unclamp_curve(kv, k, P, 3);
      CHECK(uk == iga::unclamp_knots(kv, k));
      for (int s = 0; s < 10; ++s) {
        const double x = s / 9.0;
        double a[2], b[2];
        iga::eval_curve(kv, orig, 3, x, a);
        iga::eval_curve(uk, P, 3, x, b);
        CHECK(std::abs(a[0] - b[0]) < 1e-12);
        CHECK(std::abs(a[1] - b[1]) < 1e-12);
      }
    }
  }
  SUBCASE("quarter circle") {
    const KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
    const double r = std::sqrt(0.5);
    std::vector<double> P{1, 0, 1, r, r, r, 0, 1, 1};
    const auto orig = P;
    const KnotVector uk = iga::unclamp_curve(kv, 0, P, 3);
    for (int s = 0; s < 10; ++s) {
      const double x = s / 9.0;
      double a[2], b[2];
      iga::eval_curve(kv, orig, 3, x, a);
      iga::eval_curve(uk, P, 3, x, b);
      CHECK(std::abs(a[0] - b[0]) < 1e-12);
      CHECK(std::abs(a[1] - b[1]) < 1e-12);
      CHECK(std::abs(std::hypot(b[0], b[1]) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("basis_stencil examples, symmetry and overlap oracle") {
  const KnotVector kv(kMixed, 3);
  auto st = iga::basis_stencil(kv, 0);
  CHECK(st.left == 0);
  CHECK(st.right == 3);
  st = iga::basis_stencil(kv, 4);
  CHECK(st.left == 1);
  CHECK(st.right == 6);
  st = iga::basis_stencil(kv, 6);
  CHECK(st.left == 3);
  CHECK(st.right == 9);
  st = iga::basis_stencil(kv, 3);
  CHECK(st.left == 0);
  CHECK(st.right == 6);
  CHECK(code_of([&] { iga::basis_stencil(kv, 10); }) == ErrorCode::kIndex);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + trial % 4;
    const int n = p + static_cast<int>(rng() % 15);
    const auto U = oracle::random_clamped(rng, p, n);
    const KnotVector r(U, p);
    for (int i = 0; i <= n; ++i) {
      const auto si = iga::basis_stencil(r, i);
      for (int j = 0; j <= n; ++j) {
        const auto sj = iga::basis_stencil(r, j);
        const bool ij = si.left <= j && j <= si.right;
        const bool ji = sj.left <= i && i <= sj.right;
        CHECK(ij == ji);
        // Supports overlap on a set of positive measure.
        bool overlap = false;
        for (int s = p; s <= n; ++s) {
          if (U[static_cast<size_t>(s)] == U[static_cast<size_t>(s + 1)]) continue;
          if (s >= i && s <= i + p && s >= j && s <= j + p) overlap = true;
        }
        CHECK(ij == overlap);
      }
    }
  }
}

TEST_CASE("uniform_open_knots") {
  const KnotVector kv = iga::uniform_open_knots(4, 3, 2, 0.0, 1.0);
  CHECK(kv.knots().size() == 11);
  CHECK(kv.basis_count() == 7);
  CHECK(kv[4] == 0.25);
  CHECK(kv[6] == 0.75);
  const KnotVector c0 = iga::uniform_open_knots(2, 2, 0, 0.0, 1.0);
  CHECK(c0[3] == c0[4]);
  CHECK(c0.basis_count() == 5);
  CHECK(code_of([] { iga::uniform_open_knots(2, 2, 2, 0.0, 1.0); }) == ErrorCode::kParameter);
  CHECK(code_of([] { iga::uniform_open_knots(0, 2, 1, 0.0, 1.0); }) == ErrorCode::kParameter);
}
