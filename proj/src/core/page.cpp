#include "carousel/core/page.hpp"

#include <stdexcept>
#include <unordered_set>

namespace carousel::core {

CarouselPage CarouselPage::build(std::vector<Carousel> rows) {
  if (rows.empty()) throw std::invalid_argument("page needs at least one carousel");
  std::unordered_set<ItemId> within;
  for (const auto& row : rows) {
    if (row.items.empty())
      throw std::invalid_argument("carousel '" + row.provider + "' is empty");
    within.clear();
    for (const ItemId item : row.items) {
      if (!within.insert(item).second)
        throw std::invalid_argument("duplicate item " + std::to_string(item) +
                                    " within carousel '" + row.provider + "'");
    }
  }
  CarouselPage page;
  page.max_length_ = 0;
  page.occupied_ = 0;
  for (const auto& row : rows) {
    page.max_length_ = std::max(page.max_length_, static_cast<int>(row.items.size()));
    page.occupied_ += static_cast<std::int64_t>(row.items.size());
  }
  page.rows_ = std::move(rows);
  return page;
}

std::vector<int> CarouselPage::row_lengths() const {
  std::vector<int> lengths;
  lengths.reserve(rows_.size());
  for (const auto& row : rows_) lengths.push_back(static_cast<int>(row.items.size()));
  return lengths;
}

UserGroundTruth UserGroundTruth::from_items(std::vector<std::pair<ItemId, double>> items) {
  std::sort(items.begin(), items.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!(items[i].second > 0.0))
      throw std::invalid_argument("ground-truth relevance must be > 0");
    if (i > 0 && items[i].first == items[i - 1].first)
      throw std::invalid_argument("duplicate ground-truth item");
  }
  UserGroundTruth gt;
  gt.entries_ = std::move(items);
  return gt;
}

double UserGroundTruth::relevance(ItemId item) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(),
                                   std::make_pair(item, 0.0));
  if (it == entries_.end() || it->first != item) return 0.0;
  return it->second;
}

std::vector<double> UserGroundTruth::relevances_sorted_desc() const {
  std::vector<double> rels;
  rels.reserve(entries_.size());
  for (const auto& [item, rel] : entries_) rels.push_back(rel);
  std::sort(rels.begin(), rels.end(), std::greater<>());
  return rels;
}

GroundTruth build_ground_truth(const InteractionMatrix& held_out, bool graded) {
  GroundTruth gt;
  gt.users.resize(static_cast<std::size_t>(held_out.rows()));
  for (std::int32_t u = 0; u < held_out.rows(); ++u) {
    const auto cols = held_out.row_cols(u);
    const auto vals = held_out.row_values(u);
    std::vector<std::pair<ItemId, double>> items;
    items.reserve(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
      items.emplace_back(cols[k], graded ? vals[k] : 1.0);
    gt.users[static_cast<std::size_t>(u)] = UserGroundTruth::from_items(std::move(items));
  }
  return gt;
}

}  // namespace carousel::core
