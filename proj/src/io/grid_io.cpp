#include "carousel/io/grid_io.hpp"

#include <cstdio>
#include <fstream>

#include "carousel/core/errors.hpp"

namespace carousel::io {

void save_grid(const std::filesystem::path& path, const GridFile& grid) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  char buf[128];
  std::snprintf(buf, sizeof buf, "# carousel-grid v1 alpha=%.17g beta=%.17g cutoff=%d",
                grid.weights.alpha, grid.weights.beta, grid.cutoff);
  out << buf << '\n';
  for (const auto& [user, page] : grid.pages) {
    for (int r = 0; r < page.num_rows(); ++r) {
      const auto& row = page.rows()[static_cast<std::size_t>(r)];
      for (int c = 0; c < static_cast<int>(row.items.size()); ++c)
        out << user << '\t' << (r + 1) << '\t' << (c + 1) << '\t'
            << row.items[static_cast<std::size_t>(c)] << '\t' << row.provider << '\n';
    }
  }
  if (!out) throw DataError("write failure on '" + path.string() + "'");
}

GridFile load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open grid file '" + path.string() + "'");
  std::string line;
  GridFile grid;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# carousel-grid v1 alpha=%lf beta=%lf cutoff=%d",
                  &grid.weights.alpha, &grid.weights.beta, &grid.cutoff) != 3)
    throw DataError("'" + path.string() + "' is not a v1 grid file");

  // user -> ordered rows -> (rank, item) plus provider per row.
  std::map<std::int32_t, std::map<int, std::pair<std::string, std::map<int, core::ItemId>>>>
      staged;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::int32_t user = 0;
    int row = 0, rank = 0;
    core::ItemId item = 0;
    char provider[256] = {0};
    const int got = std::sscanf(line.c_str(), "%d\t%d\t%d\t%d\t%255[^\n]", &user, &row,
                                &rank, &item, provider);
    if (got < 4 || row < 1 || rank < 1 || item < 0)
      throw DataError("corrupted grid line at " + path.string() + ":" +
                      std::to_string(line_no));
    auto& row_entry = staged[user][row];
    row_entry.first = got == 5 ? provider : "";
    if (!row_entry.second.emplace(rank, item).second)
      throw DataError("duplicate rank at " + path.string() + ":" + std::to_string(line_no));
  }

  for (auto& [user, rows] : staged) {
    std::vector<core::Carousel> carousels;
    int expected_row = 1;
    for (auto& [row_index, row_entry] : rows) {
      if (row_index != expected_row++)
        throw DataError("non-contiguous row indices for user " + std::to_string(user) +
                        " in '" + path.string() + "'");
      core::Carousel carousel;
      carousel.provider = row_entry.first;
      int expected_rank = 1;
      for (const auto& [rank, item] : row_entry.second) {
        if (rank != expected_rank++)
          throw DataError("non-contiguous ranks for user " + std::to_string(user) +
                          " in '" + path.string() + "'");
        carousel.items.push_back(item);
      }
      carousels.push_back(std::move(carousel));
    }
    try {
      grid.pages.emplace(user, core::CarouselPage::build(std::move(carousels)));
    } catch (const std::invalid_argument& e) {
      throw DataError("invalid page for user " + std::to_string(user) + " in '" +
                      path.string() + "': " + e.what());
    }
  }
  return grid;
}

}  // namespace carousel::io
