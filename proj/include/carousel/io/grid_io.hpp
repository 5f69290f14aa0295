#pragma once

#include <filesystem>
#include <map>

#include "carousel/core/page.hpp"

namespace carousel::io {

using PageSet = std::map<std::int32_t, core::CarouselPage>;

struct GridFile {
  PageSet pages;
  core::DiscountWeights weights;
  int cutoff = 10;
};

// Text format, one line per occupied cell:
//   user <TAB> row <TAB> rank <TAB> item <TAB> provider
// preceded by a version header naming the discount weights and cutoff.
// Round-trips ragged pages losslessly, including per-row provider names.
void save_grid(const std::filesystem::path& path, const GridFile& grid);
GridFile load_grid(const std::filesystem::path& path);

}  // namespace carousel::io
