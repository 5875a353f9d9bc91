// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace iga {

class WorkerTeam;

/// Compressed sparse row matrix with a fixed, preallocated pattern.
/// Column indices within a row are strictly increasing.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Throws Error(kParameter) if the pattern is malformed.
  CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int nnz() const noexcept { return static_cast<int>(col_idx_.size()); }

  std::span<const int> row_ptr() const noexcept { return row_ptr_; }
  std::span<const int> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  std::span<const int> row_cols(int r) const;
  std::span<double> row_values(int r);
  std::span<const double> row_values(int r) const;

  /// Position of (r, c) in values(), or -1 if outside the pattern.
  int find(int r, int c) const;
  double at(int r, int c) const;
  /// Throws Error(kPreallocation) if (r, c) is not in the pattern.
  void add(int r, int c, double v);

  void set_zero();
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// Row-blocked product across the team.
  void multiply(std::span<const double> x, std::span<double> y, WorkerTeam& team) const;

  void write_matrix_market(std::ostream& os) const;
  void write_matrix_market(const std::string& path) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// One value per line, full precision.
void write_vector(const std::string& path, std::span<const double> v);

}  // namespace iga
