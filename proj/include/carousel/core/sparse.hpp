#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace carousel::core {

struct Triplet {
  std::int32_t row = 0;
  std::int32_t col = 0;
  double value = 0.0;
};

// Immutable CSR matrix with strictly positive stored values. Zero entries are
// absent, not stored; duplicate (row, col) pairs are rejected at build time.
// Backs both the user-item interaction matrix and entity-feature matrices.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(std::int32_t rows, std::int32_t cols,
                                    std::vector<Triplet> entries);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }
  bool empty() const { return values_.empty(); }

  std::span<const std::int32_t> row_cols(std::int32_t r) const {
    return {col_idx_.data() + row_ptr_[r], col_idx_.data() + row_ptr_[r + 1]};
  }
  std::span<const double> row_values(std::int32_t r) const {
    return {values_.data() + row_ptr_[r], values_.data() + row_ptr_[r + 1]};
  }
  std::int64_t row_nnz(std::int32_t r) const {
    return row_ptr_[r + 1] - row_ptr_[r];
  }

  // Value at (r, c), 0 when absent. Binary search within the row.
  double at(std::int32_t r, std::int32_t c) const;

  SparseMatrix transposed() const;

  // Per-column number of stored entries (item popularity when rows = users).
  std::vector<std::int64_t> col_counts() const;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;

  std::vector<Triplet> to_triplets() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::int32_t rows_ = 0;
  std::int32_t cols_ = 0;
  std::vector<std::int64_t> row_ptr_ = {0};
  std::vector<std::int32_t> col_idx_;
  std::vector<double> values_;
};

using InteractionMatrix = SparseMatrix;
using FeatureMatrix = SparseMatrix;

struct DatasetSplit {
  InteractionMatrix train;
  InteractionMatrix validation;
  InteractionMatrix test;
  std::uint64_t seed = 0;
};

}  // namespace carousel::core
