#pragma once

#include <iosfwd>

#include "carousel/cli/run_config.hpp"

namespace carousel::cli {

struct PrepareStats {
  std::int32_t users = 0;
  std::int32_t items = 0;
  std::int64_t interactions = 0;  // records parsed
  std::int64_t kept = 0;          // after implicitization
  double density = 0.0;
  std::int64_t train = 0;
  std::int64_t validation = 0;
  std::int64_t test = 0;
};

// parse -> implicitize -> split -> persist (split.tsv + ids.tsv under
// output_dir).
PrepareStats cmd_prepare(const RunConfig& config, std::ostream& log);

// Random search for every algorithm that declares tune ranges; writes
// tuned/<name>.json and tuned/<name>_trials.tsv.
void cmd_tune(const RunConfig& config, std::ostream& log);

// Trains or loads every configured algorithm, runs individual and carousel
// evaluation against the fixed carousel, and writes results.csv/results.md.
void cmd_run(const RunConfig& config, std::ostream& log);

// Re-renders results.md from results.csv.
void cmd_report(const RunConfig& config, std::ostream& log);

}  // namespace carousel::cli
