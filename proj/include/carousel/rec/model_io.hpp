#pragma once

#include <filesystem>

#include "carousel/rec/models.hpp"

namespace carousel::rec {

// Versioned binary container: magic bytes, algorithm tag, hyperparameters,
// then the matrix payload as little-endian IEEE-754 doubles with explicit
// dimension headers. See docs/model-format.md for the exact layout.
void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace carousel::rec
