#include "carousel/metrics/page_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "carousel/core/parallel.hpp"

namespace carousel::metrics {

namespace {

inline double gain(double rel) { return std::exp2(rel) - 1.0; }

struct CellRef {
  double key;
  int i;  // 1-based
  int j;  // 1-based
  bool operator<(const CellRef& o) const {
    if (key != o.key) return key < o.key;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

}  // namespace

InstanceMask resolve_mask(const core::CarouselPage& page, core::DiscountWeights w) {
  // Best occurrence per item: minimal cell key, then smaller row, then column.
  std::unordered_map<core::ItemId, CellRef> best;
  best.reserve(static_cast<std::size_t>(page.occupied_cells()));
  for (int r = 0; r < page.num_rows(); ++r) {
    const auto& items = page.rows()[static_cast<std::size_t>(r)].items;
    for (int c = 0; c < static_cast<int>(items.size()); ++c) {
      const CellRef ref{core::cell_key(r + 1, c + 1, w), r + 1, c + 1};
      auto [it, inserted] = best.try_emplace(items[static_cast<std::size_t>(c)], ref);
      if (!inserted && ref < it->second) it->second = ref;
    }
  }
  InstanceMask mask;
  mask.kept.resize(static_cast<std::size_t>(page.num_rows()));
  for (int r = 0; r < page.num_rows(); ++r) {
    const auto& items = page.rows()[static_cast<std::size_t>(r)].items;
    auto& flags = mask.kept[static_cast<std::size_t>(r)];
    flags.assign(items.size(), 0);
    for (int c = 0; c < static_cast<int>(items.size()); ++c) {
      const CellRef& win = best.at(items[static_cast<std::size_t>(c)]);
      flags[static_cast<std::size_t>(c)] = (win.i == r + 1 && win.j == c + 1) ? 1 : 0;
    }
  }
  return mask;
}

RelevanceGrid relevance_grid(const core::CarouselPage& page,
                             const core::UserGroundTruth& gt,
                             const InstanceMask& mask) {
  RelevanceGrid grid;
  grid.rows = page.num_rows();
  grid.cols = page.max_length();
  grid.rel.assign(static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols), 0.0);
  for (int r = 0; r < grid.rows; ++r) {
    const auto& items = page.rows()[static_cast<std::size_t>(r)].items;
    for (int c = 0; c < static_cast<int>(items.size()); ++c) {
      if (!mask.is_kept(r, c)) continue;
      const double rel = gt.relevance(items[static_cast<std::size_t>(c)]);
      if (rel > 0.0)
        grid.rel[static_cast<std::size_t>(r) * static_cast<std::size_t>(grid.cols) +
                 static_cast<std::size_t>(c)] = rel;
    }
  }
  return grid;
}

double dcg2d(const RelevanceGrid& grid, core::DiscountWeights w) {
  double sum = 0.0;
  for (int i = 1; i <= grid.rows; ++i) {
    for (int j = 1; j <= grid.cols; ++j) {
      const double rel = grid.at(i, j);
      if (rel > 0.0) sum += gain(rel) / std::log2(core::cell_key(i, j, w));
    }
  }
  return sum;
}

double idcg2d(std::vector<double> relevances, const std::vector<int>& row_lengths,
              core::DiscountWeights w) {
  std::vector<CellRef> cells;
  for (int r = 0; r < static_cast<int>(row_lengths.size()); ++r)
    for (int c = 0; c < row_lengths[static_cast<std::size_t>(r)]; ++c)
      cells.push_back({core::cell_key(r + 1, c + 1, w), r + 1, c + 1});
  std::sort(cells.begin(), cells.end());
  std::sort(relevances.begin(), relevances.end(), std::greater<>());
  const std::size_t take = std::min(cells.size(), relevances.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < take; ++k)
    sum += gain(relevances[k]) / std::log2(cells[k].key);
  return sum;
}

double ndcg2d(const core::CarouselPage& page, const core::UserGroundTruth& gt,
              core::DiscountWeights w) {
  if (gt.empty()) return 0.0;
  const double ideal = idcg2d(gt.relevances_sorted_desc(), page.row_lengths(), w);
  if (ideal <= 0.0) return 0.0;
  return dcg2d(relevance_grid(page, gt, resolve_mask(page, w)), w) / ideal;
}

std::vector<ConcatEntry> concat_order(const core::CarouselPage& page,
                                      const InstanceMask& mask) {
  std::vector<ConcatEntry> out;
  out.reserve(static_cast<std::size_t>(page.occupied_cells()));
  int position = 0;
  for (int r = 0; r < page.num_rows(); ++r) {
    const auto& items = page.rows()[static_cast<std::size_t>(r)].items;
    for (int c = 0; c < static_cast<int>(items.size()); ++c)
      out.push_back({items[static_cast<std::size_t>(c)], mask.is_kept(r, c), ++position});
  }
  return out;
}

namespace {

// Shared worker so the mask is resolved once per page.
PageMetrics evaluate_page_impl(const core::CarouselPage& page,
                               const core::UserGroundTruth& gt,
                               core::DiscountWeights w) {
  PageMetrics pm;
  const InstanceMask mask = resolve_mask(page, w);
  const auto concat = concat_order(page, mask);
  const auto n_occupied = static_cast<double>(concat.size());

  // Hits, precision, AP over the concatenated order.
  std::int64_t hits = 0;
  double ap_sum = 0.0;
  double dcg = 0.0;
  for (const auto& entry : concat) {
    const double rel = entry.kept ? gt.relevance(entry.item) : 0.0;
    if (rel > 0.0) {
      ++hits;
      ap_sum += static_cast<double>(hits) / static_cast<double>(entry.position);
      dcg += gain(rel) / std::log2(static_cast<double>(entry.position) + 1.0);
    }
  }
  pm.counted_hits = static_cast<double>(hits);
  pm.precision = n_occupied > 0.0 ? static_cast<double>(hits) / n_occupied : 0.0;

  if (!gt.empty()) {
    const auto denom = static_cast<double>(std::min<std::size_t>(gt.size(), concat.size()));
    pm.average_precision = denom > 0.0 ? ap_sum / denom : 0.0;

    const auto ideal_rels = gt.relevances_sorted_desc();
    const std::size_t take = std::min(ideal_rels.size(), concat.size());
    double idcg = 0.0;
    for (std::size_t k = 0; k < take; ++k)
      idcg += gain(ideal_rels[k]) / std::log2(static_cast<double>(k) + 2.0);
    pm.ndcg = idcg > 0.0 ? dcg / idcg : 0.0;

    const double ideal2d = idcg2d(ideal_rels, page.row_lengths(), w);
    pm.ndcg2d = ideal2d > 0.0
                    ? dcg2d(relevance_grid(page, gt, mask), w) / ideal2d
                    : 0.0;
  }
  return pm;
}

}  // namespace

double precision_page(const core::CarouselPage& page, const core::UserGroundTruth& gt,
                      core::DiscountWeights w) {
  return evaluate_page_impl(page, gt, w).precision;
}

double average_precision_page(const core::CarouselPage& page,
                              const core::UserGroundTruth& gt, core::DiscountWeights w) {
  return evaluate_page_impl(page, gt, w).average_precision;
}

double ndcg_page(const core::CarouselPage& page, const core::UserGroundTruth& gt,
                 core::DiscountWeights w) {
  return evaluate_page_impl(page, gt, w).ndcg;
}

PageMetrics evaluate_page(const core::CarouselPage& page,
                          const core::UserGroundTruth& gt, core::DiscountWeights w) {
  return evaluate_page_impl(page, gt, w);
}

PageMetrics evaluate_page_set(std::span<const core::CarouselPage> pages,
                              const core::GroundTruth& gt, core::DiscountWeights w,
                              int threads) {
  if (pages.size() != gt.users.size())
    throw std::invalid_argument("pages and ground truth must cover the same users");
  const auto n = static_cast<std::int64_t>(pages.size());
  std::vector<PageMetrics> per_user(pages.size());
  std::vector<std::uint8_t> counted(pages.size(), 0);
  core::parallel_for(n, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t u = begin; u < end; ++u) {
      const auto& user_gt = gt.users[static_cast<std::size_t>(u)];
      if (user_gt.empty()) continue;
      per_user[static_cast<std::size_t>(u)] =
          evaluate_page_impl(pages[static_cast<std::size_t>(u)], user_gt, w);
      counted[static_cast<std::size_t>(u)] = 1;
    }
  });
  PageMetrics mean;
  std::int64_t users = 0;
  for (std::size_t u = 0; u < pages.size(); ++u) {
    if (!counted[u]) continue;
    ++users;
    mean.precision += per_user[u].precision;
    mean.average_precision += per_user[u].average_precision;
    mean.ndcg += per_user[u].ndcg;
    mean.ndcg2d += per_user[u].ndcg2d;
    mean.counted_hits += per_user[u].counted_hits;
  }
  if (users == 0)
    throw std::invalid_argument("no user has non-empty ground truth");
  const auto denom = static_cast<double>(users);
  mean.precision /= denom;
  mean.average_precision /= denom;
  mean.ndcg /= denom;
  mean.ndcg2d /= denom;
  mean.counted_hits /= denom;
  return mean;
}

}  // namespace carousel::metrics
