// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iga/assembly.hpp"
#include "iga/error.hpp"
#include "iga/solvers.hpp"
#include "iga/workers.hpp"

namespace iga {

Ilu0BlockJacobi::Ilu0BlockJacobi(const CsrMatrix& A, std::vector<std::vector<int>> blocks)
    : n_(A.rows()) {
  if (A.rows() != A.cols()) fail(ErrorCode::kParameter, "ilu: matrix must be square");
  std::vector<int> pos(static_cast<size_t>(n_), -1);
  std::vector<char> covered(static_cast<size_t>(n_), 0);
  for (auto& dofs : blocks) {
    if (!std::is_sorted(dofs.begin(), dofs.end()))
      fail(ErrorCode::kParameter, "ilu: block dofs must be sorted");
    Block b;
    b.dofs = std::move(dofs);
    for (size_t i = 0; i < b.dofs.size(); ++i) {
      const int d = b.dofs[i];
      if (d < 0 || d >= n_ || covered[static_cast<size_t>(d)])
        fail(ErrorCode::kParameter, "ilu: blocks must be disjoint dofs in range");
      covered[static_cast<size_t>(d)] = 1;
      pos[static_cast<size_t>(d)] = static_cast<int>(i);
    }
    b.row_ptr.push_back(0);
    for (int g : b.dofs) {
      const auto cols = A.row_cols(g);
      const auto vals = A.row_values(g);
      bool has_diag = false;
      for (size_t k = 0; k < cols.size(); ++k) {
        const int lc = pos[static_cast<size_t>(cols[k])];
        if (lc < 0) continue;
        const int row = static_cast<int>(b.row_ptr.size()) - 1;
        if (!has_diag && lc > row) {
          // Structural zero on the diagonal.
          b.diag.push_back(static_cast<int>(b.col.size()));
          b.col.push_back(row);
          b.lu.push_back(0.0);
          has_diag = true;
        }
        if (lc == row) {
          b.diag.push_back(static_cast<int>(b.col.size()));
          has_diag = true;
        }
        b.col.push_back(lc);
        b.lu.push_back(vals[k]);
      }
      if (!has_diag) {
        b.diag.push_back(static_cast<int>(b.col.size()));
        b.col.push_back(static_cast<int>(b.row_ptr.size()) - 1);
        b.lu.push_back(0.0);
      }
      b.row_ptr.push_back(static_cast<int>(b.col.size()));
    }
    for (int d : b.dofs) pos[static_cast<size_t>(d)] = -1;
    factor(b);
    blocks_.push_back(std::move(b));
  }
  // Uncovered dofs are preconditioned by the identity.
  Block rest;
  rest.row_ptr.push_back(0);
  for (int d = 0; d < n_; ++d)
    if (!covered[static_cast<size_t>(d)]) {
      rest.diag.push_back(static_cast<int>(rest.col.size()));
      rest.col.push_back(static_cast<int>(rest.dofs.size()));
      rest.lu.push_back(1.0);
      rest.dofs.push_back(d);
      rest.row_ptr.push_back(static_cast<int>(rest.col.size()));
    }
  if (!rest.dofs.empty()) blocks_.push_back(std::move(rest));
}

void Ilu0BlockJacobi::factor(Block& b) {
  const int n = static_cast<int>(b.dofs.size());
  double maxdiag = 0.0;
  for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, std::abs(b.lu[static_cast<size_t>(b.diag[static_cast<size_t>(i)])]));
  const double shift = 1e-12 * (maxdiag > 0.0 ? maxdiag : 1.0);
  std::vector<int> where(static_cast<size_t>(n), -1);
  int shifted = 0;
  for (int i = 0; i < n; ++i) {
    const int rb = b.row_ptr[static_cast<size_t>(i)], re = b.row_ptr[static_cast<size_t>(i + 1)];
    for (int p = rb; p < re; ++p) where[static_cast<size_t>(b.col[static_cast<size_t>(p)])] = p;
    for (int p = rb; p < b.diag[static_cast<size_t>(i)]; ++p) {
      const int k = b.col[static_cast<size_t>(p)];
      const double lik = b.lu[static_cast<size_t>(p)] / b.lu[static_cast<size_t>(b.diag[static_cast<size_t>(k)])];
      b.lu[static_cast<size_t>(p)] = lik;
      for (int q = b.diag[static_cast<size_t>(k)] + 1; q < b.row_ptr[static_cast<size_t>(k + 1)]; ++q) {
        const int w = where[static_cast<size_t>(b.col[static_cast<size_t>(q)])];
        if (w >= 0) b.lu[static_cast<size_t>(w)] -= lik * b.lu[static_cast<size_t>(q)];
      }
    }
    double& piv = b.lu[static_cast<size_t>(b.diag[static_cast<size_t>(i)])];
    if (piv == 0.0) {
      piv = shift;
      ++shifted;
    }
    for (int p = rb; p < re; ++p) where[static_cast<size_t>(b.col[static_cast<size_t>(p)])] = -1;
  }
  if (shifted) {
    shifted_ += shifted;
    std::ostringstream os;
    os << "ilu(0): " << shifted << " zero pivot(s) shifted by " << shift;
    warn(os.str());
  }
}

void Ilu0BlockJacobi::solve_block(const Block& b, std::span<const double> r,
                                  std::span<double> z) const {
  const int n = static_cast<int>(b.dofs.size());
  std::vector<double> y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double s = r[static_cast<size_t>(b.dofs[static_cast<size_t>(i)])];
    for (int p = b.row_ptr[static_cast<size_t>(i)]; p < b.diag[static_cast<size_t>(i)]; ++p)
      s -= b.lu[static_cast<size_t>(p)] * y[static_cast<size_t>(b.col[static_cast<size_t>(p)])];
    y[static_cast<size_t>(i)] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[static_cast<size_t>(i)];
    const int d = b.diag[static_cast<size_t>(i)];
    for (int p = d + 1; p < b.row_ptr[static_cast<size_t>(i + 1)]; ++p)
      s -= b.lu[static_cast<size_t>(p)] * y[static_cast<size_t>(b.col[static_cast<size_t>(p)])];
    y[static_cast<size_t>(i)] = s / b.lu[static_cast<size_t>(d)];
  }
  for (int i = 0; i < n; ++i) z[static_cast<size_t>(b.dofs[static_cast<size_t>(i)])] = y[static_cast<size_t>(i)];
}

void Ilu0BlockJacobi::apply(std::span<const double> r, std::span<double> z) const {
  if (r.size() != static_cast<size_t>(n_) || z.size() != static_cast<size_t>(n_))
    fail(ErrorCode::kParameter, "ilu: size mismatch");
  for (const Block& b : blocks_) solve_block(b, r, z);
}

void Ilu0BlockJacobi::apply(std::span<const double> r, std::span<double> z,
                            WorkerTeam& team) const {
  if (r.size() != static_cast<size_t>(n_) || z.size() != static_cast<size_t>(n_))
    fail(ErrorCode::kParameter, "ilu: size mismatch");
  const int W = team.size();
  team.run([&](int w) {
    for (size_t k = static_cast<size_t>(w); k < blocks_.size(); k += static_cast<size_t>(W))
      solve_block(blocks_[k], r, z);
  });
}

std::vector<std::vector<int>> Ilu0BlockJacobi::owned_blocks(const Partition& partition,
                                                            int dof_per_node) {
  std::vector<std::vector<int>> out(static_cast<size_t>(partition.workers));
  for (int w = 0; w < partition.workers; ++w)
    for (int node : partition.owned_nodes[static_cast<size_t>(w)])
      for (int c = 0; c < dof_per_node; ++c) out[static_cast<size_t>(w)].push_back(node * dof_per_node + c);
  return out;
}

}  // namespace iga
