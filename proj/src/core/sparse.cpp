#include "carousel/core/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace carousel::core {

SparseMatrix SparseMatrix::from_triplets(std::int32_t rows, std::int32_t cols,
                                         std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("triplet index out of bounds: (" +
                                  std::to_string(t.row) + ", " + std::to_string(t.col) + ")");
    if (!(t.value > 0.0))
      throw std::invalid_argument("stored values must be > 0");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
      throw std::invalid_argument("duplicate entry at (" + std::to_string(entries[i].row) +
                                  ", " + std::to_string(entries[i].col) + ")");
  }

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  for (const auto& t : entries) {
    ++m.row_ptr_[static_cast<std::size_t>(t.row) + 1];
    m.col_idx_.push_back(t.col);
    m.values_.push_back(t.value);
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r)
    m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

double SparseMatrix::at(std::int32_t r, std::int32_t c) const {
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(row_ptr_[r] + (it - cols.begin()))];
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.row_ptr_.assign(static_cast<std::size_t>(cols_) + 1, 0);
  t.col_idx_.resize(values_.size());
  t.values_.resize(values_.size());
  for (const auto c : col_idx_) ++t.row_ptr_[static_cast<std::size_t>(c) + 1];
  for (std::size_t c = 0; c < static_cast<std::size_t>(cols_); ++c)
    t.row_ptr_[c + 1] += t.row_ptr_[c];
  std::vector<std::int64_t> cursor(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  for (std::int32_t r = 0; r < rows_; ++r) {
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const auto c = static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)]);
      const auto pos = static_cast<std::size_t>(cursor[c]++);
      t.col_idx_[pos] = r;
      t.values_[pos] = values_[static_cast<std::size_t>(k)];
    }
  }
  return t;
}

std::vector<std::int64_t> SparseMatrix::col_counts() const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cols_), 0);
  for (const auto c : col_idx_) ++counts[static_cast<std::size_t>(c)];
  return counts;
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(rows_), 0.0);
  for (std::int32_t r = 0; r < rows_; ++r)
    for (const double v : row_values(r)) sums[static_cast<std::size_t>(r)] += v;
  return sums;
}

std::vector<double> SparseMatrix::col_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(cols_), 0.0);
  for (std::size_t k = 0; k < values_.size(); ++k)
    sums[static_cast<std::size_t>(col_idx_[k])] += values_[k];
  return sums;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::int32_t r = 0; r < rows_; ++r)
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      out.push_back({r, col_idx_[static_cast<std::size_t>(k)], values_[static_cast<std::size_t>(k)]});
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ptr_ == b.row_ptr_ &&
         a.col_idx_ == b.col_idx_ && a.values_ == b.values_;
}

}  // namespace carousel::core
