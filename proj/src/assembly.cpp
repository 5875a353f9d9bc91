// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "iga/error.hpp"

namespace iga {

namespace {

// Unique indices touched by each element of an axis.
std::vector<std::vector<int>> element_touch(const TensorSpace& space, int axis) {
  const int p = space.degree(axis);
  std::vector<std::vector<int>> out(static_cast<size_t>(space.element_count(axis)));
  for (int e = 0; e < space.element_count(axis); ++e) {
    const int s = space.span(axis, e);
    for (int j = s - p; j <= s; ++j) out[static_cast<size_t>(e)].push_back(space.wrap(axis, j));
    auto& v = out[static_cast<size_t>(e)];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return out;
}

std::array<int, kMaxDim> choose_grid(const std::array<int, kMaxDim>& ec, int dim, int W) {
  std::array<int, kMaxDim> best{0, 0, 0};
  double best_ratio = std::numeric_limits<double>::infinity();
  auto consider = [&](std::array<int, kMaxDim> g) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int d = 0; d < dim; ++d) {
      if (g[d] > ec[d]) return;
      const double s = static_cast<double>(ec[d]) / g[d];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    const double ratio = hi / lo;
    // Ties prefer larger factors on earlier axes.
    if (ratio < best_ratio || (ratio == best_ratio && g > best)) {
      best_ratio = ratio;
      best = g;
    }
  };
  if (dim == 1) {
    consider({W, 1, 1});
  } else {
    for (int a = 1; a <= W; ++a) {
      if (W % a) continue;
      if (dim == 2) {
        consider({a, W / a, 1});
        continue;
      }
      for (int b = 1; b <= W / a; ++b)
        if ((W / a) % b == 0) consider({a, b, W / a / b});
    }
  }
  return best;
}

}  // namespace

std::array<int, kMaxDim> Partition::grid_coords(int worker) const {
  return {worker / (grid[1] * grid[2]), (worker / grid[2]) % grid[1], worker % grid[2]};
}

int Partition::worker_of(const ElementId& e) const {
  std::array<int, kMaxDim> g{0, 0, 0};
  for (int d = 0; d < kMaxDim; ++d) {
    const auto& st = starts[static_cast<size_t>(d)];
    if (st.size() < 2) continue;
    if (e[d] < 0 || e[d] >= st.back()) fail(ErrorCode::kIndex, "partition: element out of range");
    g[d] = static_cast<int>(std::upper_bound(st.begin(), st.end() - 1, e[d]) - st.begin()) - 1;
  }
  return (g[0] * grid[1] + g[1]) * grid[2] + g[2];
}

std::vector<Partition::Load> Partition::load_report(int dof_per_node) const {
  std::vector<Load> out(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const auto uw = static_cast<size_t>(w);
    out[uw].elements = static_cast<int>(elements[uw].size());
    out[uw].owned_dofs = static_cast<int>(owned_nodes[uw].size()) * dof_per_node;
    out[uw].local_dofs = static_cast<int>(local_nodes[uw].size()) * dof_per_node;
  }
  return out;
}

Partition make_partition(const TensorSpace& space, int workers) {
  if (workers < 1) fail(ErrorCode::kParameter, "partition: need at least one worker");
  const int dim = space.dim();
  if (workers > space.element_count()) {
    std::ostringstream os;
    os << "partition: " << workers << " workers exceed " << space.element_count() << " elements";
    fail(ErrorCode::kParameter, os.str());
  }
  const auto ec = space.element_counts();
  Partition P;
  P.workers = workers;
  P.grid = choose_grid(ec, dim, workers);
  if (P.grid[0] == 0) {
    std::ostringstream os;
    os << "partition: no process grid of " << workers << " workers fits the element counts";
    fail(ErrorCode::kParameter, os.str());
  }

  // Per axis: slot starts, owner slot of each unique index, and the unique
  // indices each slot touches.
  std::array<std::vector<int>, kMaxDim> axis_owner, slot_of_element;
  std::array<std::vector<std::vector<int>>, kMaxDim> slot_local, slot_owned;
  for (int d = 0; d < kMaxDim; ++d) {
    const int E = ec[d];
    const int g = P.grid[d];
    auto& st = P.starts[static_cast<size_t>(d)];
    for (int b = 0; b < g; ++b) st.push_back(b * (E / g) + std::min(b, E % g));
    st.push_back(E);
    auto& soe = slot_of_element[static_cast<size_t>(d)];
    soe.resize(static_cast<size_t>(E));
    for (int b = 0; b < g; ++b)
      for (int e = st[static_cast<size_t>(b)]; e < st[static_cast<size_t>(b + 1)]; ++e)
        soe[static_cast<size_t>(e)] = b;

    auto& sl = slot_local[static_cast<size_t>(d)];
    auto& so = slot_owned[static_cast<size_t>(d)];
    sl.assign(static_cast<size_t>(g), {});
    so.assign(static_cast<size_t>(g), {});
    auto& own = axis_owner[static_cast<size_t>(d)];
    if (d >= dim) {
      sl[0] = {0};
      so[0] = {0};
      own = {0};
      continue;
    }
    const int u = space.unique_count(d);
    const auto touch = element_touch(space, d);
    std::vector<std::vector<int>> support(static_cast<size_t>(u));
    for (int e = 0; e < E; ++e)
      for (int a : touch[static_cast<size_t>(e)]) support[static_cast<size_t>(a)].push_back(e);
    own.assign(static_cast<size_t>(u), -1);
    for (int a = 0; a < u; ++a) {
      const auto& sup = support[static_cast<size_t>(a)];  // ascending
      int owner = -1;
      for (int b = 0; b < g; ++b)
        if (std::binary_search(sup.begin(), sup.end(), st[static_cast<size_t>(b)])) owner = b;
      if (owner < 0) owner = soe[static_cast<size_t>(sup.front())];
      own[static_cast<size_t>(a)] = owner;
      so[static_cast<size_t>(owner)].push_back(a);
    }
    for (int b = 0; b < g; ++b) {
      auto& v = sl[static_cast<size_t>(b)];
      for (int e = st[static_cast<size_t>(b)]; e < st[static_cast<size_t>(b + 1)]; ++e)
        v.insert(v.end(), touch[static_cast<size_t>(e)].begin(), touch[static_cast<size_t>(e)].end());
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }

  const auto uc = space.unique_counts();
  auto flat = [&](int i, int j, int k) { return (i * uc[1] + j) * uc[2] + k; };
  P.node_owner.resize(static_cast<size_t>(space.node_count()));
  for (int i = 0; i < uc[0]; ++i)
    for (int j = 0; j < uc[1]; ++j)
      for (int k = 0; k < uc[2]; ++k)
        P.node_owner[static_cast<size_t>(flat(i, j, k))] =
            (axis_owner[0][static_cast<size_t>(i)] * P.grid[1] + axis_owner[1][static_cast<size_t>(j)]) *
                P.grid[2] +
            axis_owner[2][static_cast<size_t>(k)];

  P.owned_nodes.resize(static_cast<size_t>(workers));
  P.local_nodes.resize(static_cast<size_t>(workers));
  P.elements.resize(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const auto g = P.grid_coords(w);
    const auto uw = static_cast<size_t>(w);
    auto product = [&](const std::array<std::vector<std::vector<int>>, kMaxDim>& sets,
                       std::vector<int>& out) {
      for (int i : sets[0][static_cast<size_t>(g[0])])
        for (int j : sets[1][static_cast<size_t>(g[1])])
          for (int k : sets[2][static_cast<size_t>(g[2])]) out.push_back(flat(i, j, k));
      std::sort(out.begin(), out.end());
    };
    product(slot_owned, P.owned_nodes[uw]);
    product(slot_local, P.local_nodes[uw]);
    for (int i = P.starts[0][static_cast<size_t>(g[0])]; i < P.starts[0][static_cast<size_t>(g[0] + 1)]; ++i)
      for (int j = P.starts[1][static_cast<size_t>(g[1])]; j < P.starts[1][static_cast<size_t>(g[1] + 1)]; ++j)
        for (int k = P.starts[2][static_cast<size_t>(g[2])]; k < P.starts[2][static_cast<size_t>(g[2] + 1)]; ++k)
          P.elements[uw].push_back({i, j, k});
  }
  return P;
}

// ---------------------------------------------------------------------------

PartitionedVector::PartitionedVector(const Partition& partition, int dof_per_node)
    : partition_(&partition), dof_per_node_(dof_per_node) {
  if (dof_per_node < 1) fail(ErrorCode::kParameter, "vector: dof_per_node must be positive");
  global_.assign(partition.node_owner.size() * static_cast<size_t>(dof_per_node), 0.0);
  local_.resize(static_cast<size_t>(partition.workers));
  for (int w = 0; w < partition.workers; ++w)
    local_[static_cast<size_t>(w)].assign(
        partition.local_nodes[static_cast<size_t>(w)].size() * static_cast<size_t>(dof_per_node), 0.0);
  cache_.resize(static_cast<size_t>(partition.workers));
}

int PartitionedVector::local_position(int w, int node) const {
  const auto& ln = partition_->local_nodes[static_cast<size_t>(w)];
  const auto it = std::lower_bound(ln.begin(), ln.end(), node);
  if (it == ln.end() || *it != node) return -1;
  return static_cast<int>(it - ln.begin());
}

void PartitionedVector::scatter_local() {
  const auto dpn = static_cast<size_t>(dof_per_node_);
  for (int w = 0; w < partition_->workers; ++w) {
    const auto& ln = partition_->local_nodes[static_cast<size_t>(w)];
    auto& loc = local_[static_cast<size_t>(w)];
    for (size_t i = 0; i < ln.size(); ++i)
      for (size_t c = 0; c < dpn; ++c)
        loc[i * dpn + c] = global_[static_cast<size_t>(ln[i]) * dpn + c];
  }
}

void PartitionedVector::cache_add(int w, int dof, double v) {
  cache_[static_cast<size_t>(w)].emplace_back(dof, v);
}

std::size_t PartitionedVector::cached() const {
  std::size_t n = 0;
  for (const auto& c : cache_) n += c.size();
  return n;
}

void PartitionedVector::flush() {
  for (auto& c : cache_) {
    for (const auto& [dof, v] : c) global_[static_cast<size_t>(dof)] += v;
    c.clear();
  }
}

void PartitionedVector::set_zero() {
  std::fill(global_.begin(), global_.end(), 0.0);
  for (auto& c : cache_) c.clear();
}

// ---------------------------------------------------------------------------

double PointData::value(int field, int comp) const {
  const auto& u = coeffs[static_cast<size_t>(field)];
  double s = 0.0;
  for (int A = 0; A < shape.nen; ++A) s += shape.v(A) * u[static_cast<size_t>(A * dof_per_node + comp)];
  return s;
}

Vec3 PointData::grad(int field, int comp) const {
  const auto& u = coeffs[static_cast<size_t>(field)];
  Vec3 g{};
  for (int A = 0; A < shape.nen; ++A) {
    const double c = u[static_cast<size_t>(A * dof_per_node + comp)];
    for (int i = 0; i < shape.dim; ++i) g[i] += shape.g(A, i) * c;
  }
  return g;
}

Mat3 PointData::hess(int field, int comp) const {
  const auto& u = coeffs[static_cast<size_t>(field)];
  Mat3 h{};
  for (int A = 0; A < shape.nen; ++A) {
    const double c = u[static_cast<size_t>(A * dof_per_node + comp)];
    for (int i = 0; i < shape.dim; ++i)
      for (int j = 0; j < shape.dim; ++j) h[i][j] += shape.h(A, i, j) * c;
  }
  return h;
}

double PointData::laplacian(int field, int comp) const {
  const Mat3 h = hess(field, comp);
  double s = 0.0;
  for (int i = 0; i < shape.dim; ++i) s += h[i][i];
  return s;
}

// ---------------------------------------------------------------------------

struct Assembler::Scratch {
  std::vector<int> nodes, functions, positions;
  std::vector<double> ctrl, weights;
  std::vector<std::vector<double>> coeffs;
  DerivTable M;
  RationalTable rt;
  MapDerivatives md;
  ShapeBundle shape;
};

Assembler::Assembler(const TensorSpace& space, const NurbsPatch& patch,
                     const Partition& partition, int order, int extra_points)
    : space_(&space), patch_(&patch), partition_(&partition), order_(std::max(order, 1)) {
  if (order < 0 || order > kMaxDerivOrder)
    fail(ErrorCode::kParameter, "assembler: derivative order must be in [0, 3]");
  if (patch.dim != space.dim())
    fail(ErrorCode::kParameter, "assembler: geometry and space dimensions differ");
  for (int d = 0; d < space.dim(); ++d)
    if (!(patch.axes[static_cast<size_t>(d)] == space.knots(d)))
      fail(ErrorCode::kParameter, "assembler: geometry is not isoparametric with the space");
  if (partition.node_owner.size() != static_cast<size_t>(space.node_count()))
    fail(ErrorCode::kParameter, "assembler: partition does not match the space");
  for (int d = 0; d < space.dim(); ++d)
    tab_[static_cast<size_t>(d)] = space.tabulate(d, order_, extra_points);
  team_ = std::make_unique<WorkerTeam>(partition.workers);
}

Assembler::~Assembler() = default;

template <class Body>
void Assembler::element_loop(std::span<PartitionedVector* const> fields, Body&& body) {
  const int dim = space_->dim();
  const int dpn = space_->dof_per_node();
  for (PartitionedVector* f : fields) {
    if (&f->partition() != partition_ || f->dof_per_node() != dpn)
      fail(ErrorCode::kParameter, "assembler: input field layout mismatch");
    f->scatter_local();
  }
  team_->run([&](int w) {
    Scratch s;
    s.coeffs.resize(fields.size());
    std::array<const BasisTable*, kMaxDim> axes{};
    const int nen = space_->local_count();
    s.ctrl.resize(static_cast<size_t>(nen * dim));
    s.weights.resize(static_cast<size_t>(nen));
    for (auto& c : s.coeffs) c.resize(static_cast<size_t>(nen * dpn));
    for (const ElementId& e : partition_->elements[static_cast<size_t>(w)]) {
      space_->element_nodes(e, s.nodes);
      space_->element_functions(e, s.functions);
      for (int A = 0; A < nen; ++A) {
        const int B = s.functions[static_cast<size_t>(A)];
        s.weights[static_cast<size_t>(A)] = patch_->weight(B);
        for (int c = 0; c < dim; ++c) s.ctrl[static_cast<size_t>(A * dim + c)] = patch_->coord(B, c);
      }
      for (size_t f = 0; f < fields.size(); ++f) {
        const auto loc = fields[f]->local(w);
        for (int A = 0; A < nen; ++A) {
          const int pos = fields[f]->local_position(w, s.nodes[static_cast<size_t>(A)]);
          for (int c = 0; c < dpn; ++c)
            s.coeffs[f][static_cast<size_t>(A * dpn + c)] = loc[static_cast<size_t>(pos * dpn + c)];
        }
      }
      std::array<int, kMaxDim> nq{1, 1, 1};
      for (int d = 0; d < dim; ++d) nq[d] = tab_[static_cast<size_t>(d)].npoints;
      int q = 0;
      for (int i = 0; i < nq[0]; ++i)
        for (int j = 0; j < nq[1]; ++j)
          for (int k = 0; k < nq[2]; ++k, ++q) {
            const std::array<int, kMaxDim> qi{i, j, k};
            double wq = 1.0;
            for (int d = 0; d < dim; ++d) {
              const auto& t = tab_[static_cast<size_t>(d)];
              axes[static_cast<size_t>(d)] = &t.table(e[d], qi[d]);
              wq *= t.weights[static_cast<size_t>(e[d] * t.npoints + qi[d])];
            }
            tensor_bspline(std::span<const BasisTable* const>(axes.data(), static_cast<size_t>(dim)),
                           order_, s.M);
            eval_rational(s.M, s.weights, order_, s.rt);
            map_and_jacobian(s.ctrl, s.rt, s.md);
            inverse_map_higher(s.md, order_);
            push_forward(s.rt, s.md, order_, s.shape);
            const PointData pd{s.shape, s.md.x, e, q, dpn,
                               std::span<const std::vector<double>>(s.coeffs)};
            body(w, s, pd, std::abs(s.shape.det) * wq);
          }
      body.finish_element(w, s);
    }
  });
}

namespace {

[[noreturn]] void non_finite(const ElementId& e, int q) {
  std::ostringstream os;
  os << "assembly: non-finite integrand at element (" << e[0] << ", " << e[1] << ", " << e[2]
     << ") point " << q;
  fail(ErrorCode::kAssembly, os.str());
}

}  // namespace

void Assembler::form_vector(std::span<PartitionedVector* const> fields,
                            const VectorIntegrand& integrand, PartitionedVector& F) {
  const int dpn = space_->dof_per_node();
  if (&F.partition() != partition_ || F.dof_per_node() != dpn)
    fail(ErrorCode::kParameter, "assembler: output vector layout mismatch");
  F.set_zero();
  const int nloc = space_->local_count() * dpn;
  std::vector<std::vector<double>> Fe(static_cast<size_t>(partition_->workers),
                                      std::vector<double>(static_cast<size_t>(nloc)));
  std::vector<std::vector<double>> Fq(Fe);
  struct Body {
    const VectorIntegrand& integrand;
    std::vector<std::vector<double>>& Fe;
    std::vector<std::vector<double>>& Fq;
    PartitionedVector& F;
    int dpn;
    void operator()(int w, Scratch&, const PointData& pd, double jw) {
      auto& fq = Fq[static_cast<size_t>(w)];
      auto& fe = Fe[static_cast<size_t>(w)];
      std::fill(fq.begin(), fq.end(), 0.0);
      integrand(pd, fq);
      for (size_t a = 0; a < fq.size(); ++a) {
        if (!std::isfinite(fq[a])) non_finite(pd.element, pd.point);
        fe[a] += fq[a] * jw;
      }
    }
    void finish_element(int w, Scratch& s) {
      auto& fe = Fe[static_cast<size_t>(w)];
      auto vals = F.values();
      for (size_t A = 0; A < s.nodes.size(); ++A)
        for (int c = 0; c < dpn; ++c) {
          const int row = s.nodes[A] * dpn + c;
          const double v = fe[A * static_cast<size_t>(dpn) + static_cast<size_t>(c)];
          if (F.owner(row) == w)
            vals[static_cast<size_t>(row)] += v;
          else
            F.cache_add(w, row, v);
        }
      std::fill(fe.begin(), fe.end(), 0.0);
    }
  } body{integrand, Fe, Fq, F, dpn};
  element_loop(fields, body);
  F.flush();
}

void Assembler::form_matrix(std::span<PartitionedVector* const> fields,
                            const MatrixIntegrand& integrand, CsrMatrix& K) {
  const int dpn = space_->dof_per_node();
  if (K.rows() != space_->dof_count() || K.cols() != space_->dof_count())
    fail(ErrorCode::kParameter, "assembler: matrix dimension mismatch");
  K.set_zero();
  const int nloc = space_->local_count() * dpn;
  const auto W = static_cast<size_t>(partition_->workers);
  std::vector<std::vector<double>> Ke(W, std::vector<double>(static_cast<size_t>(nloc * nloc)));
  std::vector<std::vector<double>> Kq(Ke);
  std::vector<std::vector<std::tuple<int, int, double>>> cache(W);
  struct Body {
    const MatrixIntegrand& integrand;
    std::vector<std::vector<double>>& Ke;
    std::vector<std::vector<double>>& Kq;
    std::vector<std::vector<std::tuple<int, int, double>>>& cache;
    CsrMatrix& K;
    const Partition& P;
    int dpn;
    int nloc;
    void operator()(int w, Scratch&, const PointData& pd, double jw) {
      auto& kq = Kq[static_cast<size_t>(w)];
      auto& ke = Ke[static_cast<size_t>(w)];
      std::fill(kq.begin(), kq.end(), 0.0);
      integrand(pd, kq);
      for (size_t a = 0; a < kq.size(); ++a) {
        if (!std::isfinite(kq[a])) non_finite(pd.element, pd.point);
        ke[a] += kq[a] * jw;
      }
    }
    void finish_element(int w, Scratch& s) {
      auto& ke = Ke[static_cast<size_t>(w)];
      for (int a = 0; a < nloc; ++a) {
        const int row = s.nodes[static_cast<size_t>(a / dpn)] * dpn + a % dpn;
        const bool own = P.node_owner[static_cast<size_t>(row / dpn)] == w;
        for (int b = 0; b < nloc; ++b) {
          const int col = s.nodes[static_cast<size_t>(b / dpn)] * dpn + b % dpn;
          const double v = ke[static_cast<size_t>(a * nloc + b)];
          if (own)
            K.add(row, col, v);
          else
            cache[static_cast<size_t>(w)].emplace_back(row, col, v);
        }
      }
      std::fill(ke.begin(), ke.end(), 0.0);
    }
  } body{integrand, Ke, Kq, cache, K, *partition_, dpn, nloc};
  element_loop(fields, body);
  for (auto& c : cache)
    for (const auto& [r, col, v] : c) K.add(r, col, v);
}

double Assembler::integrate(std::span<PartitionedVector* const> fields,
                            const ScalarIntegrand& integrand) {
  std::vector<double> partial(static_cast<size_t>(partition_->workers), 0.0);
  struct Body {
    const ScalarIntegrand& integrand;
    std::vector<double>& partial;
    void operator()(int w, Scratch&, const PointData& pd, double jw) {
      const double v = integrand(pd);
      if (!std::isfinite(v)) non_finite(pd.element, pd.point);
      partial[static_cast<size_t>(w)] += v * jw;
    }
    void finish_element(int, Scratch&) {}
  } body{integrand, partial};
  element_loop(fields, body);
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

// ---------------------------------------------------------------------------

CsrMatrix preallocate(const TensorSpace& space) {
  const int dim = space.dim();
  const int dpn = space.dof_per_node();
  std::array<std::vector<std::vector<int>>, kMaxDim> st;
  for (int d = 0; d < kMaxDim; ++d) {
    if (d >= dim) {
      st[d] = {{0}};
      continue;
    }
    for (int a = 0; a < space.unique_count(d); ++a) st[d].push_back(space.axis_stencil(d, a));
  }
  const auto uc = space.unique_counts();
  std::vector<int> row_ptr{0}, col_idx;
  for (int i = 0; i < uc[0]; ++i)
    for (int j = 0; j < uc[1]; ++j)
      for (int k = 0; k < uc[2]; ++k) {
        std::vector<int> cols;
        for (int a : st[0][static_cast<size_t>(i)])
          for (int b : st[1][static_cast<size_t>(j)])
            for (int c : st[2][static_cast<size_t>(k)]) {
              const int m = (a * uc[1] + b) * uc[2] + c;
              for (int cc = 0; cc < dpn; ++cc) cols.push_back(m * dpn + cc);
            }
        for (int c = 0; c < dpn; ++c) {
          col_idx.insert(col_idx.end(), cols.begin(), cols.end());
          row_ptr.push_back(static_cast<int>(col_idx.size()));
        }
      }
  const int n = space.dof_count();
  return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx));
}

void apply_dirichlet(CsrMatrix& K, std::span<double> F, std::span<const DirichletValue> bc) {
  const int n = K.rows();
  if (K.cols() != n || F.size() != static_cast<size_t>(n))
    fail(ErrorCode::kParameter, "dirichlet: dimension mismatch");
  std::vector<char> fixed(static_cast<size_t>(n), 0);
  std::vector<double> g(static_cast<size_t>(n), 0.0);
  for (const auto& b : bc) {
    if (b.dof < 0 || b.dof >= n) fail(ErrorCode::kIndex, "dirichlet: dof out of range");
    const auto u = static_cast<size_t>(b.dof);
    if (fixed[u] && g[u] != b.value) {
      std::ostringstream os;
      os << "dirichlet: conflicting values for dof " << b.dof;
      fail(ErrorCode::kParameter, os.str());
    }
    fixed[u] = 1;
    g[u] = b.value;
  }
  if (bc.empty()) return;
  for (int r = 0; r < n; ++r) {
    const auto cols = K.row_cols(r);
    auto vals = K.row_values(r);
    if (fixed[static_cast<size_t>(r)]) {
      for (size_t k = 0; k < cols.size(); ++k) vals[k] = cols[k] == r ? 1.0 : 0.0;
      F[static_cast<size_t>(r)] = g[static_cast<size_t>(r)];
      continue;
    }
    for (size_t k = 0; k < cols.size(); ++k)
      if (fixed[static_cast<size_t>(cols[k])]) {
        F[static_cast<size_t>(r)] -= vals[k] * g[static_cast<size_t>(cols[k])];
        vals[k] = 0.0;
      }
  }
}

std::vector<int> face_nodes(const TensorSpace& space, int axis, int side) {
  if (axis < 0 || axis >= space.dim()) fail(ErrorCode::kIndex, "face_nodes: axis out of range");
  if (space.periodic(axis)) fail(ErrorCode::kParameter, "face_nodes: axis is periodic");
  const int target = side == 0 ? 0 : space.unique_count(axis) - 1;
  std::vector<int> out;
  for (int node = 0; node < space.node_count(); ++node)
    if (space.node_multi_index(node)[axis] == target) out.push_back(node);
  return out;
}

}  // namespace iga
