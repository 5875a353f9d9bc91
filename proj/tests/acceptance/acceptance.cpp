// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   acceptance            every criterion except scaling
//   acceptance scaling    the worker-scaling benchmark only
//   acceptance all        everything
//
// Exit status is 0 when every selected criterion passes. The scaling run
// exits with 77 (reported as skipped) when it fails on a machine with fewer
// than 8 hardware threads, since 8 workers cannot run concurrently there.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../unit/oracles.hpp"
#include "iga/assembly.hpp"
#include "iga/demos.hpp"
#include "iga/error.hpp"
#include "iga/geometries.hpp"
#include "iga/geometry.hpp"
#include "iga/solvers.hpp"
#include "iga/space.hpp"
#include "iga/splines.hpp"

using namespace iga;

namespace {

// Tolerances.
constexpr double kBasisTol = 1e-13;
constexpr double kUnityTol = 1e-12;
constexpr double kZeroSumTol = 1e-11;
constexpr double kPushTol[3] = {1e-6, 1e-5, 1e-3};
constexpr double kInverseMapTol = 1e-12;
constexpr double kCurveTol = 1e-12;
constexpr double kAssemblyTol = 1e-12;
constexpr double kGmresRtol = 1e-8;
constexpr double kLuTol = 1e-6;
constexpr double kTrapezoidalTol = 1e-12;
constexpr double kTimeOrder = 1.9;
constexpr double kSpaceOrder = 2.9;
constexpr double kMassDrift = 1e-8;
constexpr double kJacobianTol = 1e-5;
constexpr double kZeroLoadTol = 1e-12;
constexpr double kLinearTol = 1e-3;
constexpr int kMaxNewton = 8;
constexpr double kEfficiency = 0.70;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int workers_available() {
  return std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 8);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// ------------------------------------------------------------ golden references

void golden_references(Outcome& o) {
  const KnotVector kv({0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1}, 3);
  const std::vector<std::vector<double>> want{
      {-0.2, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1.2},
      {-0.4, -0.2, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1.2, 1.4},
      {-0.6, -0.4, -0.2, 0, 0.2, 0.4, 0.6, 0.8, 1, 1.2, 1.4, 1.6}};
  for (int k = 0; k < 3; ++k) {
    const KnotVector out = unclamp_knots(kv, k);
    const auto& w = want[static_cast<size_t>(k)];
    bool same = out.knots().size() == w.size();
    for (size_t i = 0; same && i < w.size(); ++i)
      same = fmt("%.15g", out.knots()[i]) == fmt("%.15g", w[i]);
    o.require(same, "unclamped knots, k=" + std::to_string(k));
  }

  const std::vector<std::pair<int, int>> rows{{0, 3}, {0, 4}, {0, 4}, {0, 6}, {1, 6},
                                              {3, 6}, {3, 9}, {6, 9}, {6, 9}, {6, 9}};
  const TensorSpace mixed = TensorSpace::from_knots(
      {KnotVector({0, 0, 0, 0, 2, 4, 4, 6, 6, 6, 8, 8, 8, 8}, 3)}, {-1}, 1);
  const CsrMatrix K = preallocate(mixed);
  bool same = K.rows() == 10;
  for (int r = 0; same && r < 10; ++r) {
    std::vector<int> cols;
    for (int c = rows[static_cast<size_t>(r)].first; c <= rows[static_cast<size_t>(r)].second; ++c)
      cols.push_back(c);
    const auto got = K.row_cols(r);
    same = std::vector<int>(got.begin(), got.end()) == cols;
  }
  o.require(same, "10x10 nonzero pattern");
  o.detail << "3 knot vectors and 10 pattern rows compared";
}

// --------------------------------------------------------------------- basis

// Perturbed rational patch of degree 2 with 3 elements per axis.
NurbsPatch random_patch(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), uw(0.7, 1.5);
  const int ne = 3;
  std::vector<AxisSpec> specs(static_cast<size_t>(dim), AxisSpec{ne, 2, 1, 0.0, 1.0});
  const TensorSpace space = TensorSpace::build(specs, 1);
  std::vector<double> lo(static_cast<size_t>(dim), 0.0), hi(static_cast<size_t>(dim), 1.0);
  NurbsPatch patch = box_patch(space, lo, hi);
  const auto counts = patch.counts();
  for (int B = 0; B < patch.point_count(); ++B) {
    int rem = B;
    bool interior = true;
    for (int d = dim - 1; d >= 0; --d) {
      const int i = rem % counts[d];
      rem /= counts[d];
      interior = interior && i > 0 && i < counts[d] - 1;
    }
    const double w = uw(rng);
    for (int c = 0; c < dim; ++c) {
      double x = patch.points[static_cast<size_t>(B * patch.stride() + c)];
      if (interior) x += 0.1 / ne * u(rng);
      patch.points[static_cast<size_t>(B * patch.stride() + c)] = x * w;
    }
    patch.points[static_cast<size_t>(B * patch.stride() + dim)] = w;
  }
  return patch;
}

void basis(Outcome& o) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + trial % 4;
    const int n = p + 1 + static_cast<int>(rng() % 8);
    const std::vector<double> U = oracle::random_clamped(rng, p, n);
    const KnotVector kv(U, p);
    for (int q = 0; q < 20; ++q) {
      const double x = q == 0 ? 1.0 : u01(rng);
      const BasisTable bt = eval_basis(kv, x, 3);
      o.require(bt.span == oracle::linear_span(U, p, x), "span");
      // The recursion is zero at the right end (half-open spans).
      if (x == 1.0) continue;
      for (int r = 0; r <= 3; ++r) {
        std::vector<double> ref(static_cast<size_t>(p + 1));
        for (int l = 0; l <= p; ++l)
          ref[static_cast<size_t>(l)] = oracle::cox_de_boor_deriv(U, bt.span - p + l, p, r, x);
        const double scale = std::max(1.0, max_abs(ref));
        for (int l = 0; l <= p; ++l) {
          const double e = std::abs(bt(r, l) - ref[static_cast<size_t>(l)]) / scale;
          worst = std::max(worst, e);
          o.require(e <= kBasisTol, "Cox-de Boor p=" + std::to_string(p) + " r=" + std::to_string(r));
        }
      }
    }
  }

  double unity = 0.0, zero = 0.0;
  for (int dim = 1; dim <= 3; ++dim) {
    const NurbsPatch patch = random_patch(dim, rng);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> xi(static_cast<size_t>(dim));
      for (auto& v : xi) v = u01(rng);
      const PointEvaluation pe = evaluate_point(patch, xi, 3);
      const auto& S = pe.shape;
      double scale = 1.0;
      for (const auto* d : {&S.d1, &S.d2, &S.d3})
        for (double v : *d) scale = std::max(scale, std::abs(v));
      double sv = 0.0;
      std::vector<double> s1(static_cast<size_t>(dim), 0.0), s2(static_cast<size_t>(dim * dim), 0.0),
          s3(static_cast<size_t>(dim * dim * dim), 0.0);
      for (int A = 0; A < S.nen; ++A) {
        sv += S.v(A);
        for (size_t i = 0; i < s1.size(); ++i) s1[i] += S.d1[static_cast<size_t>(A) * s1.size() + i];
        for (size_t i = 0; i < s2.size(); ++i) s2[i] += S.d2[static_cast<size_t>(A) * s2.size() + i];
        for (size_t i = 0; i < s3.size(); ++i) s3[i] += S.d3[static_cast<size_t>(A) * s3.size() + i];
      }
      unity = std::max(unity, std::abs(sv - 1.0));
      for (const auto* s : {&s1, &s2, &s3}) zero = std::max(zero, max_abs(*s) / scale);
    }
  }
  o.require(unity <= kUnityTol, "partition of unity");
  o.require(zero <= kZeroSumTol, "derivative sums");
  o.detail << "recursion " << fmt("%.1e", worst) << ", unity " << fmt("%.1e", unity)
           << ", derivative sums " << fmt("%.1e", zero) << " (relative)";
}

// -------------------------------------------------------------- push-forward

std::vector<double> invert(const NurbsPatch& patch, const Vec3& target, std::vector<double> xi) {
  for (int it = 0; it < 50; ++it) {
    const PointEvaluation pe = evaluate_point(patch, xi, 1);
    double norm = 0.0;
    for (int a = 0; a < patch.dim; ++a) {
      double step = 0.0;
      for (int i = 0; i < patch.dim; ++i) step += pe.map.dxi[a][i] * (target[i] - pe.map.x[i]);
      xi[static_cast<size_t>(a)] += step;
      norm += step * step;
    }
    if (norm < 1e-34) break;
  }
  return xi;
}

void push_forward(Outcome& o) {
  const NurbsPatch patch = quarter_annulus(3, 3);
  double worst[3] = {0, 0, 0};
  const double hs[3] = {1e-5, 1e-4, 1e-3};
  for (const std::vector<double>& xi0 :
       {std::vector<double>{0.2, 0.25}, std::vector<double>{0.55, 0.5}, std::vector<double>{0.85, 0.8}}) {
    const PointEvaluation pe = evaluate_point(patch, xi0, 3);
    const int nen = pe.shape.nen;
    double sc[3] = {1, 1, 1};
    for (double v : pe.shape.d1) sc[0] = std::max(sc[0], std::abs(v));
    for (double v : pe.shape.d2) sc[1] = std::max(sc[1], std::abs(v));
    for (double v : pe.shape.d3) sc[2] = std::max(sc[2], std::abs(v));
    for (int order = 1; order <= 3; ++order) {
      const double h = hs[order - 1];
      for (int c = 0; c < 2; ++c) {
        Vec3 xp = pe.map.x, xm = pe.map.x;
        xp[c] += h;
        xm[c] -= h;
        const PointEvaluation pp = evaluate_point(patch, invert(patch, xp, xi0), 3);
        const PointEvaluation pm = evaluate_point(patch, invert(patch, xm, xi0), 3);
        o.require(pp.first == pe.first && pm.first == pe.first, "stencil stays in one element");
        for (int A = 0; A < nen; ++A) {
          double e = 0.0;
          if (order == 1) {
            e = std::abs(pe.shape.g(A, c) - (pp.shape.v(A) - pm.shape.v(A)) / (2 * h));
          } else {
            for (int i = 0; i < 2; ++i) {
              if (order == 2) {
                e = std::max(e, std::abs(pe.shape.h(A, i, c) -
                                         (pp.shape.g(A, i) - pm.shape.g(A, i)) / (2 * h)));
              } else {
                for (int j = 0; j < 2; ++j)
                  e = std::max(e, std::abs(pe.shape.t(A, i, j, c) -
                                           (pp.shape.h(A, i, j) - pm.shape.h(A, i, j)) / (2 * h)));
              }
            }
          }
          worst[order - 1] = std::max(worst[order - 1], e / sc[order - 1]);
        }
      }
    }
  }
  for (int k = 0; k < 3; ++k)
    o.require(worst[k] <= kPushTol[k], "spatial derivative order " + std::to_string(k + 1));

  NurbsPatch line;
  line.dim = 1;
  line.axes = {KnotVector({0, 0, 0, 2, 2, 2}, 2)};
  line.periodic = {-1};
  line.points = {0, 1, 0, 1, 4, 1};
  const PointEvaluation pe = evaluate_point(line, std::vector<double>{1.0}, 3);
  const double e = std::max({std::abs(pe.map.dxi[0][0] - 0.5), std::abs(pe.map.dxi2[0][0][0] + 0.25),
                             std::abs(pe.map.dxi3[0][0][0][0] - 0.375)});
  o.require(e <= kInverseMapTol, "x = xi^2 inverse-map derivatives");
  o.detail << "relative FD errors " << fmt("%.1e", worst[0]) << "/" << fmt("%.1e", worst[1]) << "/"
           << fmt("%.1e", worst[2]) << ", x = xi^2 " << fmt("%.1e", e);
}

// ------------------------------------------------------------- unclamp curve

double curve_change(const KnotVector& kv, int k, std::vector<double> P, int stride, int samples) {
  const std::vector<double> orig = P;
  const KnotVector uk = unclamp_curve(kv, k, P, stride);
  double worst = 0.0;
  std::vector<double> a(static_cast<size_t>(stride - 1)), b(a.size());
  for (int s = 0; s < samples; ++s) {
    const double x = kv.domain_lo() + (kv.domain_hi() - kv.domain_lo()) * s / (samples - 1);
    eval_curve(kv, orig, stride, x, a);
    eval_curve(uk, P, stride, x, b);
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

void unclamp(Outcome& o) {
  const double r = std::sqrt(0.5);
  double worst = curve_change(KnotVector({0, 0, 0, 1, 1, 1}, 2), 0, {1, 0, 1, r, r, r, 0, 1, 1}, 3, 101);
  o.require(worst <= kCurveTol, "quarter circle");

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0), uw(0.5, 2.0);
  int cases = 0;
  for (int c = 0; c < 20; ++c) {
    const int p = 1 + c % 4;
    const int n = 2 * p + static_cast<int>(rng() % 5);
    const std::vector<double> U = oracle::random_clamped(rng, p, n);
    std::vector<double> P;
    for (int i = 0; i <= n; ++i) {
      const double w = uw(rng);
      P.insert(P.end(), {u(rng) * w, u(rng) * w, u(rng) * w, w});
    }
    for (int k = 0; k < p; ++k, ++cases) {
      const double e = curve_change(KnotVector(U, p), k, P, 4, 101);
      worst = std::max(worst, e);
      o.require(e <= kCurveTol, "random curve " + std::to_string(c) + " k=" + std::to_string(k));
    }
  }
  o.detail << "quarter circle + 20 random curves (" << cases << " cases), max change "
           << fmt("%.1e", worst);
}

// ------------------------------------------------------------------ assembly

// Support overlap by evaluation: basis functions are positive on the interior
// of each span in their support, so two functions overlap iff both are
// nonzero at an interior point of some element.
std::set<std::pair<int, int>> overlap_oracle(const TensorSpace& s) {
  std::set<std::pair<int, int>> out;
  const int dim = s.dim();
  for (const auto& e : s.elements()) {
    const QuadratureRule q = s.quadrature_rule(e);
    std::vector<std::vector<int>> active(static_cast<size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      const KnotVector& kv = s.knots(d);
      const std::vector<double> U(kv.knots().begin(), kv.knots().end());
      const double x = q.points[static_cast<size_t>(d)];
      for (int i = 0; i <= kv.last(); ++i)
        if (oracle::cox_de_boor(U, i, kv.degree(), x) > 0.0) active[static_cast<size_t>(d)].push_back(i);
    }
    std::vector<int> nodes;
    std::vector<int> idx(static_cast<size_t>(dim));
    std::function<void(int)> walk = [&](int d) {
      if (d == dim) {
        nodes.push_back(s.node_index(idx));
        return;
      }
      for (int i : active[static_cast<size_t>(d)]) {
        idx[static_cast<size_t>(d)] = i;
        walk(d + 1);
      }
    };
    walk(0);
    for (int a : nodes)
      for (int b : nodes) out.insert({a, b});
  }
  return out;
}

void assembly(Outcome& o) {
  double worst = 0.0;
  for (const TensorSpace& s :
       {TensorSpace::build(std::vector<AxisSpec>{AxisSpec{8, 2, 1}, AxisSpec{8, 2, 1}}, 2),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{8, 2, 1, 0, 1, true, 1}, AxisSpec{6, 3, 2}}, 1),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{4, 2, 1}, AxisSpec{4, 1, 0, 0, 1, true, 0},
                                                 AxisSpec{3, 2, 0}},
                           1)}) {
    std::vector<double> lo(static_cast<size_t>(s.dim()), 0.0), hi(static_cast<size_t>(s.dim()), 1.0);
    const NurbsPatch g = box_patch(s, lo, hi);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> U0(static_cast<size_t>(s.dof_count()));
    for (auto& x : U0) x = u(rng);
    const int dpn = s.dof_per_node();
    const int dim = s.dim();
    auto vec_int = [dpn, dim](const PointData& pd, std::span<double> f) {
      const double uv = pd.value(0, 0);
      const Vec3 gu = pd.grad(0, dpn - 1);
      for (int A = 0; A < pd.nen(); ++A)
        for (int c = 0; c < dpn; ++c)
          f[static_cast<size_t>(A * dpn + c)] =
              pd.shape.v(A) * (std::sin(3 * pd.x[0]) + uv * uv) +
              pd.shape.g(A, c % dim) * gu[dim - 1] * (c + 1);
    };
    auto mat_int = [dpn, dim](const PointData& pd, std::span<double> k) {
      const double uv = pd.value(0, 0);
      const int n = pd.nen() * dpn;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const int A = a / dpn, B = b / dpn;
          k[static_cast<size_t>(a * n + b)] =
              pd.shape.v(A) * pd.shape.v(B) * std::cos(pd.x[1] + uv) +
              pd.shape.g(A, a % dim) * pd.shape.g(B, b % dim) * (1 + a % dpn);
        }
    };
    std::vector<double> F1, K1;
    for (int W : {1, 2, 3, 4, 8}) {
      const Partition P = make_partition(s, W);
      Assembler asmb(s, g, P, 1);
      PartitionedVector Uv(P, dpn), F(P, dpn);
      std::copy(U0.begin(), U0.end(), Uv.values().begin());
      PartitionedVector* in[] = {&Uv};
      CsrMatrix K = preallocate(s);
      asmb.form_vector(in, vec_int, F);
      asmb.form_matrix(in, mat_int, K);
      const std::vector<double> Fv(F.values().begin(), F.values().end());
      const std::vector<double> Kv(K.values().begin(), K.values().end());
      asmb.form_vector(in, vec_int, F);
      asmb.form_matrix(in, mat_int, K);
      o.require(std::equal(Fv.begin(), Fv.end(), F.values().begin()) &&
                    std::equal(Kv.begin(), Kv.end(), K.values().begin()),
                "bitwise rerun at W=" + std::to_string(W));
      if (W == 1) {
        F1 = Fv;
        K1 = Kv;
        continue;
      }
      double fd = 0, kd = 0;
      for (size_t i = 0; i < Fv.size(); ++i) fd = std::max(fd, std::abs(Fv[i] - F1[i]));
      for (size_t i = 0; i < Kv.size(); ++i) kd = std::max(kd, std::abs(Kv[i] - K1[i]));
      const double e = std::max(fd / max_abs(F1), kd / max_abs(K1));
      worst = std::max(worst, e);
      o.require(e <= kAssemblyTol, "W=" + std::to_string(W) + " vs W=1");
    }
  }

  int spaces = 0;
  for (const TensorSpace& s :
       {TensorSpace::from_knots({KnotVector({0, 0, 0, 0, 2, 4, 4, 6, 6, 6, 8, 8, 8, 8}, 3)}, {-1}, 1),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{5, 3, 2, 0, 1, true, 2}}, 1),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{4, 1, 0}, AxisSpec{4, 1, 0}}, 1),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{3, 2, 1, 0, 1, true, 1}, AxisSpec{4, 2, 0}}, 2),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{5, 2, 1, 0, 1, true, 0}, AxisSpec{3, 3, 2}}, 1),
        TensorSpace::build(std::vector<AxisSpec>{AxisSpec{2, 2, 1}, AxisSpec{3, 1, 0, 0, 1, true, 0},
                                                 AxisSpec{2, 2, 0}},
                           1)}) {
    if (s.dof_count() > 200) continue;
    ++spaces;
    const CsrMatrix M = preallocate(s);
    const auto pairs = overlap_oracle(s);
    const int dpn = s.dof_per_node();
    bool same = true;
    for (int r = 0; r < M.rows(); ++r)
      for (int c = 0; c < M.cols(); ++c)
        same = same && (M.find(r, c) >= 0) == static_cast<bool>(pairs.count({r / dpn, c / dpn}));
    o.require(same, "CSR pattern vs overlap oracle, " + std::to_string(s.dof_count()) + " dofs");
  }
  o.detail << "max relative W difference " << fmt("%.1e", worst) << ", " << spaces
           << " patterns checked";
}

// ------------------------------------------------------------------- solvers

void solvers(Outcome& o) {
  const AxisSpec ax{16, 2, 1};
  const TensorSpace space = TensorSpace::build(std::vector<AxisSpec>{ax, ax}, 1);
  const NurbsPatch patch = box_patch(space, std::vector<double>{0, 0}, std::vector<double>{1, 1});
  const Partition part = make_partition(space, 4);
  Assembler asmb(space, patch, part, 1);
  CsrMatrix K = preallocate(space);
  asmb.form_matrix({}, [](const PointData& pd, std::span<double> k) {
    const int n = pd.nen();
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B)
        k[static_cast<size_t>(A * n + B)] =
            pd.shape.g(A, 0) * pd.shape.g(B, 0) + pd.shape.g(A, 1) * pd.shape.g(B, 1);
  }, K);
  PartitionedVector Fv(part, 1);
  asmb.form_vector({}, [](const PointData& pd, std::span<double> f) {
    const double pi = std::numbers::pi;
    const double src = 2 * pi * pi * std::sin(pi * pd.x[0]) * std::sin(pi * pd.x[1]);
    for (int A = 0; A < pd.nen(); ++A) f[static_cast<size_t>(A)] = src * pd.shape.v(A);
  }, Fv);
  std::vector<double> F(Fv.values().begin(), Fv.values().end());
  std::vector<DirichletValue> bc;
  for (int axis = 0; axis < 2; ++axis)
    for (int side = 0; side < 2; ++side)
      for (int node : face_nodes(space, axis, side)) bc.push_back({node, 0.0});
  std::sort(bc.begin(), bc.end(), [](auto a, auto b) { return a.dof < b.dof; });
  bc.erase(std::unique(bc.begin(), bc.end(), [](auto a, auto b) { return a.dof == b.dof; }), bc.end());
  apply_dirichlet(K, F, bc);

  const int n = K.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const auto cols = K.row_cols(r);
    const auto vals = K.row_values(r);
    for (size_t k = 0; k < cols.size(); ++k) A(r, cols[k]) = vals[k];
  }
  const Eigen::VectorXd ref = A.partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(F.data(), n));

  const Ilu0BlockJacobi M(K, Ilu0BlockJacobi::owned_blocks(part, 1));
  std::vector<double> x(F.size(), 0.0);
  GmresConfig cfg;
  cfg.rtol = kGmresRtol;
  const GmresResult gr = solve_sparse(K, &M, F, x, cfg);
  std::vector<double> Kx(x.size());
  K.multiply(x, Kx);
  double rn = 0, bn = 0, err = 0, scale = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    rn += (Kx[i] - F[i]) * (Kx[i] - F[i]);
    bn += F[i] * F[i];
    err = std::max(err, std::abs(x[i] - ref(static_cast<Eigen::Index>(i))));
    scale = std::max(scale, std::abs(ref(static_cast<Eigen::Index>(i))));
  }
  const double relres = std::sqrt(rn / bn);
  o.require(gr.converged && relres <= kGmresRtol, "GMRES relative residual");
  o.require(err <= kLuTol * scale, "GMRES vs dense LU");

  auto scalar = [](std::function<double(double)> f, std::function<double(double)> df) {
    TimeResidualFn R = [f](double, std::span<const double> U, std::span<const double> V,
                           std::span<double> r) { r[0] = V[0] - f(U[0]); };
    TimeJacobianSolveFn J = [df](double, std::span<const double> U, std::span<const double>,
                                 double su, double sv, std::span<const double> r,
                                 std::span<double> dv) {
      dv[0] = r[0] / (sv - su * df(U[0]));
      return 1;
    };
    return std::pair{R, J};
  };

  const double lam = -2.0, dt = 0.1;
  const auto [Rl, Jl] = scalar([=](double u) { return lam * u; }, [=](double) { return lam; });
  TimeState t{{1.0}, {lam}, 0.0};
  double trap = 1.0, terr = 0.0;
  for (int k = 0; k < 10; ++k) {
    galpha_step(Rl, Jl, t, alpha_parameters(1.0, dt), {});
    trap *= (1 + lam * dt / 2) / (1 - lam * dt / 2);
    terr = std::max(terr, std::abs(t.U[0] - trap));
  }
  o.require(terr <= kTrapezoidalTol, "trapezoidal limit");

  const auto [Rq, Jq] = scalar([](double u) { return -u * u; }, [](double u) { return -2 * u; });
  double min_order = 1e300;
  for (double rho : {0.0, 0.5, 1.0}) {
    std::vector<double> e;
    for (int steps : {10, 20, 40}) {
      TimeState s{{1.0}, {-1.0}, 0.0};
      NewtonConfig nc;
      nc.atol = 1e-14;
      for (int k = 0; k < steps; ++k) galpha_step(Rq, Jq, s, alpha_parameters(rho, 1.0 / steps), nc);
      e.push_back(std::abs(s.U[0] - 0.5));
    }
    min_order = std::min({min_order, std::log2(e[0] / e[1]), std::log2(e[1] / e[2])});
  }
  o.require(min_order >= kTimeOrder, "time-accuracy order");
  o.detail << "GMRES " << gr.iterations << " its, residual " << fmt("%.1e", relres) << ", vs LU "
           << fmt("%.1e", err / scale) << "; trapezoidal " << fmt("%.1e", terr) << "; order "
           << fmt("%.2f", min_order);
}

// ------------------------------------------------------------------- poisson

void poisson(Outcome& o) {
  std::vector<double> flat, ann;
  for (int N : {8, 16, 32}) {
    const TensorSpace s = TensorSpace::build(std::vector<AxisSpec>{AxisSpec{N, 2, 1}, AxisSpec{N, 2, 1}}, 1);
    const NurbsPatch g = box_patch(s, std::vector<double>{0, 0}, std::vector<double>{1, 1});
    PoissonOptions opt;
    opt.workers = workers_available();
    flat.push_back(poisson_run(s, g, poisson_sine_problem(), opt).l2_error);
    const NurbsPatch a = quarter_annulus(N, N);
    ann.push_back(poisson_run(TensorSpace::from_patch(a, 1), a, poisson_annulus_problem(), opt).l2_error);
  }
  const double f1 = std::log2(flat[0] / flat[1]), f2 = std::log2(flat[1] / flat[2]);
  const double a1 = std::log2(ann[0] / ann[1]), a2 = std::log2(ann[1] / ann[2]);
  o.require(std::min(f1, f2) >= kSpaceOrder, "flat L2 order");
  o.require(std::min(a1, a2) >= kSpaceOrder, "annulus L2 order");
  o.detail << "L2 orders flat " << fmt("%.2f", f1) << ", " << fmt("%.2f", f2) << "; annulus "
           << fmt("%.2f", a1) << ", " << fmt("%.2f", a2);
}

// ------------------------------------------------------------- cahn-hilliard

void cahn_hilliard(Outcome& o) {
  CahnHilliardOptions opt;
  opt.elements = 64;
  opt.degree = 2;
  opt.continuity = 1;
  opt.steps = 50;
  opt.workers = workers_available();
  const CahnHilliardProblem problem;
  const CahnHilliardResult r = cahn_hilliard_run(problem, opt);
  const double m0 = r.monitors.front().mass;
  double drift = 0.0;
  for (const auto& m : r.monitors) drift = std::max(drift, std::abs(m.mass - m0) / std::abs(m0));
  o.require(static_cast<int>(r.monitors.size()) == opt.steps + 1, "50 steps completed");
  o.require(drift <= kMassDrift, "mass drift");

  CahnHilliard model(r.space, r.patch, problem, opt.workers);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> V(r.c.size()), dir(r.c.size());
  for (double& v : V) v = u(rng);
  for (double& v : dir) v = u(rng);
  CsrMatrix K = model.matrix();
  model.jacobian(r.c, V, 1.0, 0.0, K);
  const double eu = jacobian_fd_error(
      [&](std::span<const double> c, std::span<double> R) { model.residual(c, V, R); }, K, r.c, dir);
  model.jacobian(r.c, V, 0.0, 1.0, K);
  const double ev = jacobian_fd_error(
      [&](std::span<const double> v, std::span<double> R) { model.residual(r.c, v, R); }, K, V, dir);
  o.require(std::max(eu, ev) <= kJacobianTol, "Jacobian finite-difference check");
  o.detail << "64x64, " << opt.steps << " steps, " << fmt("%.1f", r.seconds) << " s; mass drift "
           << fmt("%.1e", drift) << "; Jacobian FD " << fmt("%.1e", eu) << " (dR/dc), "
           << fmt("%.1e", ev) << " (dR/dcdot)";
}

// -------------------------------------------------------------- hyperelastic

void hyperelastic(Outcome& o) {
  const HyperelasticProblem base = HyperelasticProblem::from_young(70, 0.35);
  HyperelasticOptions opt;
  opt.workers = workers_available();
  const HyperelasticResult r = neohookean_run(base, opt);
  int most = 0;
  for (const auto& s : r.steps) most = std::max(most, s.newton);
  o.require(r.initial_residual <= kZeroLoadTol, "zero-load residual");
  o.require(r.steps.size() == 15, "15 load steps");
  o.require(most <= kMaxNewton, "Newton iterations per step");

  HyperelasticProblem small = base;
  small.left_displacement = {-1e-6, 0.5e-6, 0};
  small.load_steps = 1;
  const HyperelasticResult rs = neohookean_run(small, opt);
  Hyperelastic model(rs.space, rs.patch, small, opt.workers);
  GmresConfig tight;
  tight.rtol = 1e-12;
  const std::vector<double> lin = linear_elastic_solve(model, tight);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < lin.size(); ++i) {
    num += (rs.u[i] - lin[i]) * (rs.u[i] - lin[i]);
    den += lin[i] * lin[i];
  }
  const double rel = std::sqrt(num / den);
  o.require(rel <= kLinearTol, "small strain vs linear elasticity");
  o.detail << "zero-load residual " << fmt("%.1e", r.initial_residual) << "; linear oracle "
           << fmt("%.1e", rel) << "; max Newton iterations per step " << most;
}

// ------------------------------------------------------------------- scaling

void scaling(Outcome& o) {
  const BenchOptions b;  // 64x64 p=2, workers 1,2,4,8, 10 x 2 x 30
  const auto rows = scaling_bench(b);
  std::cout << format_bench_table(b, rows);
  double eff8 = 0.0;
  for (const auto& row : rows)
    if (row.workers == 8) eff8 = row.efficiency;
  o.require(eff8 >= kEfficiency, "efficiency at 8 workers");
  o.detail << "efficiency at 8 workers " << fmt("%.1f", 100 * eff8) << "% (threshold "
           << fmt("%.0f", 100 * kEfficiency) << "%), hardware threads "
           << std::thread::hardware_concurrency();
}

struct Criterion {
  const char* name;
  void (*run)(Outcome&);
};

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "default";
  if (mode != "default" && mode != "scaling" && mode != "all") {
    std::cerr << "usage: acceptance [scaling|all]\n";
    return 2;
  }
  const Criterion criteria[] = {
      {"golden-references", golden_references}, {"basis", basis},
      {"push-forward", push_forward},     {"unclamp-curve", unclamp},
      {"assembly", assembly},             {"solvers", solvers},
      {"poisson", poisson},               {"cahn-hilliard", cahn_hilliard},
      {"hyperelastic", hyperelastic},     {"scaling", scaling},
  };
  int failed = 0;
  bool scaling_failed = false;
  for (const auto& c : criteria) {
    const bool is_scaling = std::string(c.name) == "scaling";
    if ((mode == "default" && is_scaling) || (mode == "scaling" && !is_scaling)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  " << o.detail.str() << "  ["
              << fmt("%.1f", s) << " s]" << std::endl;
    if (!o.pass) {
      ++failed;
      scaling_failed = scaling_failed || is_scaling;
    }
  }
  if (failed == 1 && scaling_failed && mode == "scaling" && std::thread::hardware_concurrency() < 8) {
    std::cout << "scaling threshold not assessable: fewer than 8 hardware threads\n";
    return 77;
  }
  return failed == 0 ? 0 : 1;
}
