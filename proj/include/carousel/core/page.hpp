#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "carousel/core/sparse.hpp"

namespace carousel::core {

using ItemId = std::int32_t;

// Negative item ids mark padding placeholder cells: they occupy a position on
// the page but can never match a ground-truth item or another cell.
constexpr bool is_placeholder(ItemId item) { return item < 0; }

// Two-dimensional discount weights; alpha scales the row index, beta the
// column index. alpha, beta >= 1 keeps log2(alpha*i + beta*j) >= 1 for every
// 1-based cell.
struct DiscountWeights {
  double alpha = 1.0;
  double beta = 1.0;
  bool valid() const { return alpha >= 1.0 && beta >= 1.0; }
};

// Discount argument of cell (i, j), both 1-based. Strictly increasing in both
// coordinates for valid weights.
inline double cell_key(int i, int j, DiscountWeights w) {
  return w.alpha * static_cast<double>(i) + w.beta * static_cast<double>(j);
}

// One ranked row. No duplicates inside a carousel; duplicates across the rows
// of a page are allowed and preserved.
struct Carousel {
  std::vector<ItemId> items;
  std::string provider;
};

class CarouselPage {
 public:
  CarouselPage() = default;

  // Validates every row: non-empty, no internal duplicates. Rejects an empty
  // row list. Row order and content are preserved exactly.
  static CarouselPage build(std::vector<Carousel> rows);

  const std::vector<Carousel>& rows() const { return rows_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int max_length() const { return max_length_; }

  int row_length(int r) const { return static_cast<int>(rows_[static_cast<std::size_t>(r)].items.size()); }
  std::vector<int> row_lengths() const;

  std::int64_t occupied_cells() const { return occupied_; }

 private:
  std::vector<Carousel> rows_;
  int max_length_ = 0;
  std::int64_t occupied_ = 0;
};

// One user's ground truth: item -> relevance (> 0). Items absent from the map
// have relevance 0. Binary mode stores 1.0, graded mode the raw rating.
class UserGroundTruth {
 public:
  UserGroundTruth() = default;
  static UserGroundTruth from_items(std::vector<std::pair<ItemId, double>> items);

  double relevance(ItemId item) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<ItemId, double>>& entries() const { return entries_; }

  // All relevance values, descending.
  std::vector<double> relevances_sorted_desc() const;

 private:
  std::vector<std::pair<ItemId, double>> entries_;  // sorted by item id
};

struct GroundTruth {
  std::vector<UserGroundTruth> users;
  std::int32_t num_users() const { return static_cast<std::int32_t>(users.size()); }
};

// Relevance per user from a held-out interaction matrix. Binary mode assigns
// 1.0 to every entry; graded mode keeps the stored value.
GroundTruth build_ground_truth(const InteractionMatrix& held_out, bool graded);

}  // namespace carousel::core
