#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "carousel/core/sparse.hpp"

namespace carousel::io {

enum class FileFormat { DoubleColon, Csv, Tsv };

FileFormat parse_file_format(const std::string& name);
std::string file_format_name(FileFormat format);

struct Interaction {
  std::int32_t user = 0;  // dense index
  std::int32_t item = 0;  // dense index
  double rating = 0.0;
  std::int64_t timestamp = 0;
  bool has_timestamp = false;
};

// Parsed interaction records with bidirectional id maps built in
// first-appearance order. Record order matches the source file.
struct RawInteractions {
  std::vector<Interaction> records;
  std::vector<std::string> user_ids;  // dense index -> external id
  std::vector<std::string> item_ids;
  std::unordered_map<std::string, std::int32_t> user_index;
  std::unordered_map<std::string, std::int32_t> item_index;
  std::int64_t malformed_lines = 0;

  std::int32_t num_users() const { return static_cast<std::int32_t>(user_ids.size()); }
  std::int32_t num_items() const { return static_cast<std::int32_t>(item_ids.size()); }
};

// '::'-separated files carry user::item::rating[::timestamp] with no header;
// csv/tsv files carry a header line naming user,item,rating[,timestamp].
// In strict mode any malformed line raises DataError with its line number;
// otherwise malformed lines are counted and skipped.
RawInteractions parse_interactions(const std::filesystem::path& path, FileFormat format,
                                   bool strict = true);

// TSV with header; parse_interactions(path, Tsv) round-trips the records and
// both id maps exactly.
void save_interactions(const std::filesystem::path& path, const RawInteractions& raw);

// Keeps records with rating >= threshold. Binary mode stores 1.0, graded mode
// the raw rating (non-positive ratings are dropped). The dense index space is
// preserved: users/items left without interactions keep their indices.
core::InteractionMatrix implicitize(const RawInteractions& raw, double threshold,
                                    bool graded = false);

// Compacting variant: users and items left without interactions are dropped
// from the index space. kept_users[new_index] / kept_items[new_index] give the
// original dense indices, so external ids stay recoverable. Feature files
// aligned to the original index space no longer apply after compaction, which
// is why the plain implicitize is the default path.
struct CompactedInteractions {
  core::InteractionMatrix matrix;
  std::vector<std::int32_t> kept_users;
  std::vector<std::int32_t> kept_items;
};

CompactedInteractions implicitize_compacted(const RawInteractions& raw, double threshold,
                                            bool graded = false);

}  // namespace carousel::io
