// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/sparse.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "iga/error.hpp"
#include "iga/workers.hpp"

namespace iga {

CsrMatrix::CsrMatrix(int rows, int cols, std::vector<int> row_ptr,
                     std::vector<int> col_idx)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)) {
  if (rows < 0 || cols < 0 || row_ptr_.size() != static_cast<size_t>(rows + 1) ||
      row_ptr_.front() != 0 || row_ptr_.back() != static_cast<int>(col_idx_.size()))
    fail(ErrorCode::kParameter, "csr: inconsistent row pointer");
  for (int r = 0; r < rows; ++r) {
    const int b = row_ptr_[static_cast<size_t>(r)];
    const int e = row_ptr_[static_cast<size_t>(r + 1)];
    if (b > e) fail(ErrorCode::kParameter, "csr: row pointer decreases");
    for (int k = b; k < e; ++k) {
      const int c = col_idx_[static_cast<size_t>(k)];
      if (c < 0 || c >= cols) fail(ErrorCode::kParameter, "csr: column out of range");
      if (k > b && c <= col_idx_[static_cast<size_t>(k - 1)])
        fail(ErrorCode::kParameter, "csr: columns not strictly increasing");
    }
  }
  values_.assign(col_idx_.size(), 0.0);
}

std::span<const int> CsrMatrix::row_cols(int r) const {
  const auto b = static_cast<size_t>(row_ptr_[static_cast<size_t>(r)]);
  const auto e = static_cast<size_t>(row_ptr_[static_cast<size_t>(r + 1)]);
  return std::span<const int>(col_idx_).subspan(b, e - b);
}

std::span<double> CsrMatrix::row_values(int r) {
  const auto b = static_cast<size_t>(row_ptr_[static_cast<size_t>(r)]);
  const auto e = static_cast<size_t>(row_ptr_[static_cast<size_t>(r + 1)]);
  return std::span<double>(values_).subspan(b, e - b);
}

std::span<const double> CsrMatrix::row_values(int r) const {
  const auto b = static_cast<size_t>(row_ptr_[static_cast<size_t>(r)]);
  const auto e = static_cast<size_t>(row_ptr_[static_cast<size_t>(r + 1)]);
  return std::span<const double>(values_).subspan(b, e - b);
}

int CsrMatrix::find(int r, int c) const {
  if (r < 0 || r >= rows_) return -1;
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return -1;
  return row_ptr_[static_cast<size_t>(r)] + static_cast<int>(it - cols.begin());
}

double CsrMatrix::at(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : values_[static_cast<size_t>(k)];
}

void CsrMatrix::add(int r, int c, double v) {
  const int k = find(r, c);
  if (k < 0) {
    std::ostringstream os;
    os << "csr: insertion at (" << r << ", " << c << ") outside the preallocated pattern";
    fail(ErrorCode::kPreallocation, os.str());
  }
  values_[static_cast<size_t>(k)] += v;
}

void CsrMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

namespace {

void multiply_rows(const CsrMatrix& A, std::span<const double> x, std::span<double> y,
                   int r0, int r1) {
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto va = A.values();
  for (int r = r0; r < r1; ++r) {
    double s = 0.0;
    for (int k = rp[static_cast<size_t>(r)]; k < rp[static_cast<size_t>(r + 1)]; ++k)
      s += va[static_cast<size_t>(k)] * x[static_cast<size_t>(ci[static_cast<size_t>(k)])];
    y[static_cast<size_t>(r)] = s;
  }
}

}  // namespace

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != static_cast<size_t>(cols_) || y.size() != static_cast<size_t>(rows_))
    fail(ErrorCode::kParameter, "csr: multiply dimension mismatch");
  multiply_rows(*this, x, y, 0, rows_);
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y,
                         WorkerTeam& team) const {
  if (x.size() != static_cast<size_t>(cols_) || y.size() != static_cast<size_t>(rows_))
    fail(ErrorCode::kParameter, "csr: multiply dimension mismatch");
  const int W = team.size();
  team.run([&](int w) {
    const int r0 = static_cast<int>(static_cast<long long>(rows_) * w / W);
    const int r1 = static_cast<int>(static_cast<long long>(rows_) * (w + 1) / W);
    multiply_rows(*this, x, y, r0, r1);
  });
}

void CsrMatrix::write_matrix_market(std::ostream& os) const {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int r = 0; r < rows_; ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (size_t k = 0; k < cols.size(); ++k)
      os << r + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
  }
}

void CsrMatrix::write_matrix_market(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_matrix_market(out);
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

void write_vector(const std::string& path, std::span<const double> v) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (double x : v) out << x << '\n';
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace iga
