#pragma once

#include <filesystem>

#include "carousel/core/sparse.hpp"
#include "carousel/io/interactions.hpp"

namespace carousel::io {

struct SplitConfig {
  double train_fraction = 0.8;
  double validation_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 42;
  double implicit_threshold = 3.5;
};

// Fractions must each lie in (0, 1) and sum to 1 within 1e-9.
void validate(const SplitConfig& cfg);

// Global per-interaction holdout: a seeded Fisher-Yates permutation over all
// entries assigns floor(n * fraction) entries to validation and test, the
// remainder (rounding residual included) to train. The generator is pinned
// (mt19937_64 with in-repo mappings), so identical seeds give identical
// splits on every platform.
core::DatasetSplit split_holdout(const core::InteractionMatrix& matrix,
                                 const SplitConfig& cfg);

void save_split(const std::filesystem::path& path, const core::DatasetSplit& split);
core::DatasetSplit load_split(const std::filesystem::path& path);

// External-id maps persisted next to the split so feature files can be
// aligned later without re-parsing the interactions.
void save_id_maps(const std::filesystem::path& path, const RawInteractions& raw);

struct IdMaps {
  std::vector<std::string> user_ids;
  std::vector<std::string> item_ids;
  std::unordered_map<std::string, std::int32_t> user_index;
  std::unordered_map<std::string, std::int32_t> item_index;
};

IdMaps load_id_maps(const std::filesystem::path& path);

// Seeded uniform subsample of users (keep_fraction in (0, 1]); interactions
// of dropped users are removed, the index space is compacted.
core::InteractionMatrix subsample_users(const core::InteractionMatrix& matrix,
                                        double keep_fraction, std::uint64_t seed);

}  // namespace carousel::io
