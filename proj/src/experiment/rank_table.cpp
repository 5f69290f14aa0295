#include "carousel/experiment/rank_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace carousel::experiment {

namespace {

std::vector<int> column_ranks(const std::vector<RankInput>& rows,
                              double RankInput::*column) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = rows[a].*column;
    const double vb = rows[b].*column;
    if (va != vb) return va > vb;
    return rows[a].label < rows[b].label;
  });
  std::vector<int> ranks(rows.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    ranks[order[pos]] = static_cast<int>(pos) + 1;
  return ranks;
}

}  // namespace

std::vector<RankEntry> rank_table(const std::vector<RankInput>& rows) {
  if (rows.empty()) throw std::invalid_argument("rank_table needs at least one row");
  for (const auto& row : rows)
    if (!std::isfinite(row.individual_map) || !std::isfinite(row.carousel_map))
      throw std::invalid_argument("rank_table requires finite MAP values");

  const auto individual = column_ranks(rows, &RankInput::individual_map);
  const auto carousel = column_ranks(rows, &RankInput::carousel_map);
  std::vector<RankEntry> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.push_back({rows[i].label, individual[i], carousel[i],
                   individual[i] - carousel[i]});
  return out;
}

double kendall_tau(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rank vectors differ in length");
  const auto n = a.size();
  if (n < 2) return 1.0;
  std::int64_t concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int da = a[i] - a[j];
      const int db = b[i] - b[j];
      const std::int64_t sign = static_cast<std::int64_t>(da) * db;
      if (sign > 0) ++concordant;
      else if (sign < 0) ++discordant;
    }
  }
  const auto pairs = static_cast<double>(n * (n - 1) / 2);
  return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace carousel::experiment
