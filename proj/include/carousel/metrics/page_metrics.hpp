#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "carousel/core/page.hpp"

namespace carousel::metrics {

// All cell indices in the formulas below are 1-based, matching the metric
// definitions; storage is 0-based.

// Which page cell of each distinct item counts. Exactly one occurrence per
// item is kept: the one with the smallest cell key, ties broken by smaller
// row, then smaller column. Independent of any ground truth.
struct InstanceMask {
  std::vector<std::vector<std::uint8_t>> kept;  // parallel to page rows

  bool is_kept(int row, int col) const {  // 0-based
    return kept[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0;
  }
};

InstanceMask resolve_mask(const core::CarouselPage& page, core::DiscountWeights w);

// Dense rows x max_length grid; padding cells and masked duplicates carry 0.
struct RelevanceGrid {
  int rows = 0;
  int cols = 0;
  std::vector<double> rel;  // row-major

  double at(int i, int j) const {  // 1-based
    return rel[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(cols) +
               static_cast<std::size_t>(j - 1)];
  }
};

RelevanceGrid relevance_grid(const core::CarouselPage& page,
                             const core::UserGroundTruth& gt,
                             const InstanceMask& mask);

// DCG2D = sum over the padded rectangle of (2^rel(i,j) - 1) / log2(alpha*i + beta*j).
double dcg2d(const RelevanceGrid& grid, core::DiscountWeights w);

// Ideal DCG2D: occupied cells sorted by ascending cell key (ties by smaller
// row, then column) receive the relevances in descending order. Padding cells
// are never assigned relevance.
double idcg2d(std::vector<double> relevances, const std::vector<int>& row_lengths,
              core::DiscountWeights w);

// NDCG2D = DCG2D / IDCG2D; 0 for empty ground truth.
double ndcg2d(const core::CarouselPage& page, const core::UserGroundTruth& gt,
              core::DiscountWeights w);

// Row-major traversal of occupied cells; padding skipped, positions 1-based.
struct ConcatEntry {
  core::ItemId item = 0;
  bool kept = false;
  int position = 0;
};

std::vector<ConcatEntry> concat_order(const core::CarouselPage& page,
                                      const InstanceMask& mask);

// counted hits / occupied cells, where a hit is a kept, relevant instance.
double precision_page(const core::CarouselPage& page, const core::UserGroundTruth& gt,
                      core::DiscountWeights w);

// AP over the concatenated order with denominator min(|gt|, occupied cells);
// masked duplicates are non-hits but still consume positions. 0 for empty gt.
double average_precision_page(const core::CarouselPage& page,
                              const core::UserGroundTruth& gt, core::DiscountWeights w);

// Classic NDCG (gain 2^rel - 1, discount log2(k + 1)) over the concatenated
// order; the ideal list has as many positions as the page has occupied cells.
double ndcg_page(const core::CarouselPage& page, const core::UserGroundTruth& gt,
                 core::DiscountWeights w);

// counted_hits is an integer count for a single page and a mean when the
// struct carries a user average.
struct PageMetrics {
  double precision = 0.0;
  double average_precision = 0.0;
  double ndcg = 0.0;
  double ndcg2d = 0.0;
  double counted_hits = 0.0;
};

// All metrics of a single page, sharing one mask resolution.
PageMetrics evaluate_page(const core::CarouselPage& page,
                          const core::UserGroundTruth& gt, core::DiscountWeights w);

// Arithmetic mean of PageMetrics over users with non-empty ground truth.
// pages[u] is the page shown to user u; pages of excluded users are ignored
// (and may be empty). The reduction order is fixed so that the result does
// not depend on the worker count. Throws if no user has ground truth.
PageMetrics evaluate_page_set(std::span<const core::CarouselPage> pages,
                              const core::GroundTruth& gt, core::DiscountWeights w,
                              int threads = 1);

}  // namespace carousel::metrics
