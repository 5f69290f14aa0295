#pragma once

#include <string>
#include <vector>

namespace carousel::experiment {

struct RankInput {
  std::string label;
  double individual_map = 0.0;
  double carousel_map = 0.0;
};

struct RankEntry {
  std::string label;
  int rank_individual = 0;
  int rank_carousel = 0;
  int delta_rank = 0;  // rank_individual - rank_carousel; positive = gained positions
};

// Rank 1 = highest MAP per column; ties broken by ascending label. The output
// preserves the input order and each rank column is a permutation of 1..n.
std::vector<RankEntry> rank_table(const std::vector<RankInput>& rows);

// Kendall tau-a between two rank vectors of equal length.
double kendall_tau(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace carousel::experiment
