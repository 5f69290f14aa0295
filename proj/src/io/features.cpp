#include "carousel/io/features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

#include "carousel/core/errors.hpp"

namespace carousel::io {

namespace {

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return parts;
}

std::string lowercased(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// "Title (1995)" -> 1995; returns 0 when no year is present.
int year_from_title(const std::string& title) {
  const auto close = title.rfind(')');
  if (close == std::string::npos || close < 5) return 0;
  const auto open = title.rfind('(', close);
  if (open == std::string::npos || close - open != 5) return 0;
  int year = 0;
  for (std::size_t i = open + 1; i < close; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(title[i]))) return 0;
    year = year * 10 + (title[i] - '0');
  }
  return year;
}

class FeatureBuilder {
 public:
  void add(std::int32_t entity, const std::string& feature) {
    pairs_.emplace(entity, feature_id(feature));
  }

  ParsedFeatures finish(std::int32_t num_entities, std::int64_t dropped) {
    std::vector<core::Triplet> triplets;
    triplets.reserve(pairs_.size());
    for (const auto& [entity, feature] : pairs_)
      triplets.push_back({entity, feature, 1.0});
    ParsedFeatures out;
    out.features = core::FeatureMatrix::from_triplets(
        num_entities, static_cast<std::int32_t>(names_.size()), std::move(triplets));
    out.feature_names = std::move(names_);
    out.dropped_entities = dropped;
    return out;
  }

 private:
  std::int32_t feature_id(const std::string& name) {
    const auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::int32_t>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  std::vector<std::string> names_;
  std::map<std::string, std::int32_t> index_;
  std::set<std::pair<std::int32_t, std::int32_t>> pairs_;  // de-duplicates
};

std::string field_sep(FileFormat format) {
  switch (format) {
    case FileFormat::DoubleColon: return "::";
    case FileFormat::Csv: return ",";
    case FileFormat::Tsv: return "\t";
  }
  return ",";
}

}  // namespace

ParsedFeatures parse_item_features(const std::filesystem::path& items_path,
                                   const std::optional<std::filesystem::path>& tags_path,
                                   FileFormat format, const RawInteractions& raw) {
  std::ifstream in(items_path);
  if (!in) throw DataError("cannot open item features file '" + items_path.string() + "'");

  FeatureBuilder builder;
  std::int64_t dropped = 0;
  const std::string sep = field_sep(format);
  const bool has_header = format != FileFormat::DoubleColon;
  std::string line;
  std::int64_t line_no = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (has_header && !header_skipped) {
      header_skipped = true;
      continue;
    }
    const auto fields = split(line, sep);
    if (fields.size() < 3)
      throw DataError("malformed item feature line at " + items_path.string() + ":" +
                      std::to_string(line_no));
    const auto it = raw.item_index.find(fields[0]);
    if (it == raw.item_index.end()) {
      ++dropped;
      continue;
    }
    const std::int32_t item = it->second;
    for (const auto& genre : split(fields[2], "|")) {
      if (genre.empty() || genre == "(no genres listed)") continue;
      builder.add(item, "genre:" + genre);
    }
    if (const int year = year_from_title(fields[1]); year > 0)
      builder.add(item, "decade:" + std::to_string(year / 10 * 10));
  }

  if (tags_path) {
    std::ifstream tags(*tags_path);
    if (!tags) throw DataError("cannot open tags file '" + tags_path->string() + "'");
    line_no = 0;
    header_skipped = false;
    while (std::getline(tags, line)) {
      ++line_no;
      strip_cr(line);
      if (line.empty()) continue;
      if (has_header && !header_skipped) {
        header_skipped = true;
        continue;
      }
      const auto fields = split(line, sep);
      if (fields.size() < 3)
        throw DataError("malformed tag line at " + tags_path->string() + ":" +
                        std::to_string(line_no));
      const auto it = raw.item_index.find(fields[1]);
      if (it == raw.item_index.end()) {
        ++dropped;
        continue;
      }
      if (!fields[2].empty()) builder.add(it->second, "tag:" + lowercased(fields[2]));
    }
  }
  return builder.finish(raw.num_items(), dropped);
}

ParsedFeatures parse_entity_features(
    const std::filesystem::path& path, FileFormat format,
    const std::unordered_map<std::string, std::int32_t>& entity_index,
    std::int32_t num_entities) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feature file '" + path.string() + "'");

  FeatureBuilder builder;
  std::int64_t dropped = 0;
  const std::string sep = field_sep(format);
  const bool has_header = format != FileFormat::DoubleColon;
  std::string line;
  std::int64_t line_no = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (has_header && !header_skipped) {
      header_skipped = true;
      continue;
    }
    const auto fields = split(line, sep);
    if (fields.size() < 2)
      throw DataError("malformed feature line at " + path.string() + ":" +
                      std::to_string(line_no));
    const auto it = entity_index.find(fields[0]);
    if (it == entity_index.end()) {
      ++dropped;
      continue;
    }
    for (const auto& token : split(fields[1], "|"))
      if (!token.empty()) builder.add(it->second, "feat:" + token);
  }
  return builder.finish(num_entities, dropped);
}

}  // namespace carousel::io
