#pragma once

#include <filesystem>
#include <optional>

#include "carousel/experiment/tuning.hpp"
#include "carousel/io/split.hpp"

namespace carousel::cli {

struct AlgorithmSpec {
  std::string name;
  rec::HyperParams params;                         // explicit hyperparameters
  std::optional<experiment::ParamSpace> tune;      // ranges for random search
  std::optional<bool> exclude_seen;
};

// The structured run configuration. Every field is validated against the
// module preconditions at load time; unknown JSON keys are rejected.
struct RunConfig {
  std::filesystem::path interactions;
  io::FileFormat format = io::FileFormat::Csv;
  std::optional<std::filesystem::path> item_features;
  std::optional<std::filesystem::path> item_tags;
  std::optional<std::filesystem::path> user_features;

  double implicit_threshold = 3.5;
  bool graded_relevance = false;

  io::SplitConfig split;

  int cutoff = 10;
  core::DiscountWeights weights;  // alpha = beta = 1 by default
  int threads = 0;                // 0 = hardware concurrency

  std::vector<std::string> fixed_providers;
  std::optional<std::filesystem::path> fixed_grid;

  std::vector<AlgorithmSpec> algorithms;

  int tune_budget = 50;
  std::uint64_t tune_seed = 1;

  std::filesystem::path output_dir = "out";
};

// Loads and validates a JSON config. Relative dataset paths are resolved
// against the CAROUSEL_DATA_DIR environment variable when it is set.
RunConfig load_run_config(const std::filesystem::path& path);

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<int> cutoff;
  std::optional<int> threads;
  std::optional<std::string> fixed;  // provider list or grid path
  std::optional<std::filesystem::path> output_dir;
};

void apply_overrides(RunConfig& config, const CliOverrides& overrides);

// Human-readable execution plan for --dry-run.
std::string describe_plan(const RunConfig& config);

}  // namespace carousel::cli
