#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "carousel/metrics/page_metrics.hpp"

namespace carousel::experiment {

struct ResultRow {
  std::string label;
  bool failed = false;  // training failed; rendered as a gap row
  metrics::PageMetrics individual;
  metrics::PageMetrics carousel;
  double improvement_individual = 0.0;  // percent vs the fixed provider's individual MAP
  double improvement_carousel = 0.0;    // percent vs the baseline page MAP
  int rank_individual = 0;
  int rank_carousel = 0;
  int delta_rank = 0;
};

// One run's table: the fixed provider appears first (its carousel columns are
// the baseline page, i.e. fixed rows plus an all-padding candidate row),
// followed by one row per candidate algorithm.
struct ReportTable {
  std::string fixed_label;
  metrics::PageMetrics fixed_individual;
  metrics::PageMetrics baseline;
  std::vector<ResultRow> rows;
  double kendall_tau = 0.0;  // individual vs carousel MAP ranking
};

// CSV carries full-precision values (%.17g); the Markdown rendering rounds to
// the display precision (metrics 4 decimals, improvements 1 decimal).
void write_results_csv(const std::filesystem::path& path, const ReportTable& table);
ReportTable read_results_csv(const std::filesystem::path& path);

std::string render_markdown(const ReportTable& table);
void write_results_markdown(const std::filesystem::path& path, const ReportTable& table);

}  // namespace carousel::experiment
