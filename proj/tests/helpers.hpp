#pragma once

#include <set>
#include <vector>

#include "carousel/core/page.hpp"
#include "carousel/core/rng.hpp"
#include "carousel/core/sparse.hpp"

namespace test_helpers {

using carousel::core::Carousel;
using carousel::core::CarouselPage;
using carousel::core::DiscountWeights;
using carousel::core::ItemId;
using carousel::core::Rng;
using carousel::core::SparseMatrix;
using carousel::core::Triplet;
using carousel::core::UserGroundTruth;

inline CarouselPage page_of(std::vector<std::vector<ItemId>> rows) {
  std::vector<Carousel> carousels;
  for (auto& row : rows) carousels.push_back({std::move(row), "test"});
  return CarouselPage::build(std::move(carousels));
}

inline UserGroundTruth gt_of(std::vector<ItemId> items, double rel = 1.0) {
  std::vector<std::pair<ItemId, double>> entries;
  for (const auto item : items) entries.emplace_back(item, rel);
  return UserGroundTruth::from_items(std::move(entries));
}

// Ragged page over items [0, universe) with cross-row duplicates injected at
// dup_prob; rows never contain internal duplicates.
inline CarouselPage random_page(Rng& rng, int max_rows, int max_cols, int universe,
                                double dup_prob) {
  const int n_rows = static_cast<int>(rng.uniform_int(1, max_rows));
  std::vector<ItemId> on_page;
  std::vector<Carousel> rows;
  for (int r = 0; r < n_rows; ++r) {
    const int len = static_cast<int>(rng.uniform_int(1, max_cols));
    Carousel row;
    row.provider = "row" + std::to_string(r);
    std::set<ItemId> in_row;
    for (int c = 0; c < len; ++c) {
      ItemId item = -1;
      if (!on_page.empty() && rng.uniform01() < dup_prob) {
        for (int attempt = 0; attempt < 8 && item < 0; ++attempt) {
          const auto pick = on_page[static_cast<std::size_t>(
              rng.uniform_int(0, static_cast<std::int64_t>(on_page.size()) - 1))];
          if (in_row.count(pick) == 0) item = pick;
        }
      }
      while (item < 0) {
        const auto pick = static_cast<ItemId>(rng.uniform_int(0, universe - 1));
        if (in_row.count(pick) == 0) item = pick;
      }
      in_row.insert(item);
      row.items.push_back(item);
      on_page.push_back(item);
    }
    rows.push_back(std::move(row));
  }
  return CarouselPage::build(std::move(rows));
}

inline UserGroundTruth random_gt(Rng& rng, int universe, double relevant_prob,
                                 bool graded) {
  std::vector<std::pair<ItemId, double>> entries;
  for (int i = 0; i < universe; ++i)
    if (rng.uniform01() < relevant_prob)
      entries.emplace_back(i, graded ? static_cast<double>(rng.uniform_int(1, 5)) : 1.0);
  return UserGroundTruth::from_items(std::move(entries));
}

inline DiscountWeights random_weights(Rng& rng) {
  static const double choices[] = {1.0, 1.5, 2.0, 3.0};
  return {choices[rng.uniform_int(0, 3)], choices[rng.uniform_int(0, 3)]};
}

inline SparseMatrix random_binary_matrix(Rng& rng, int rows, int cols, double density) {
  std::vector<Triplet> triplets;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng.uniform01() < density) triplets.push_back({r, c, 1.0});
  if (triplets.empty()) triplets.push_back({0, 0, 1.0});
  return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

inline SparseMatrix random_valued_matrix(Rng& rng, int rows, int cols, double density) {
  std::vector<Triplet> triplets;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng.uniform01() < density)
        triplets.push_back({r, c, 0.5 + 4.5 * rng.uniform01()});
  if (triplets.empty()) triplets.push_back({0, 0, 1.0});
  return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

}  // namespace test_helpers
