#include "carousel/io/interactions.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "carousel/core/errors.hpp"

namespace carousel::io {

namespace {

std::vector<std::string_view> split_line(std::string_view line, FileFormat format) {
  std::vector<std::string_view> fields;
  const std::string_view sep = format == FileFormat::DoubleColon ? "::"
                               : format == FileFormat::Csv       ? ","
                                                                 : "\t";
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::int32_t intern(const std::string& id, std::vector<std::string>& ids,
                    std::unordered_map<std::string, std::int32_t>& index) {
  const auto it = index.find(id);
  if (it != index.end()) return it->second;
  const auto dense = static_cast<std::int32_t>(ids.size());
  ids.push_back(id);
  index.emplace(id, dense);
  return dense;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

FileFormat parse_file_format(const std::string& name) {
  if (name == "double-colon") return FileFormat::DoubleColon;
  if (name == "csv") return FileFormat::Csv;
  if (name == "tsv") return FileFormat::Tsv;
  throw ConfigError("unknown file format '" + name + "'");
}

std::string file_format_name(FileFormat format) {
  switch (format) {
    case FileFormat::DoubleColon: return "double-colon";
    case FileFormat::Csv: return "csv";
    case FileFormat::Tsv: return "tsv";
  }
  return "?";
}

RawInteractions parse_interactions(const std::filesystem::path& path, FileFormat format,
                                   bool strict) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open interactions file '" + path.string() + "'");

  RawInteractions raw;
  std::string line;
  std::int64_t line_no = 0;
  const bool has_header = format != FileFormat::DoubleColon;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (has_header && !header_skipped) {
      header_skipped = true;
      continue;
    }
    const auto fields = split_line(line, format);
    double rating = 0.0;
    std::int64_t ts = 0;
    const bool shape_ok = fields.size() == 3 || fields.size() == 4;
    const bool ok = shape_ok && !fields[0].empty() && !fields[1].empty() &&
                    parse_double(fields[2], rating) &&
                    (fields.size() == 3 || fields[3].empty() || parse_i64(fields[3], ts));
    if (!ok) {
      if (strict)
        throw DataError("malformed interaction at " + path.string() + ":" +
                        std::to_string(line_no));
      ++raw.malformed_lines;
      continue;
    }
    Interaction rec;
    rec.user = intern(std::string(fields[0]), raw.user_ids, raw.user_index);
    rec.item = intern(std::string(fields[1]), raw.item_ids, raw.item_index);
    rec.rating = rating;
    rec.has_timestamp = fields.size() == 4 && !fields[3].empty();
    rec.timestamp = rec.has_timestamp ? ts : 0;
    raw.records.push_back(rec);
  }
  if (raw.records.empty())
    throw DataError("no interactions parsed from '" + path.string() + "'");
  return raw;
}

void save_interactions(const std::filesystem::path& path, const RawInteractions& raw) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << "user\titem\trating\ttimestamp\n";
  char buf[64];
  for (const auto& rec : raw.records) {
    std::snprintf(buf, sizeof buf, "%.17g", rec.rating);
    out << raw.user_ids[static_cast<std::size_t>(rec.user)] << '\t'
        << raw.item_ids[static_cast<std::size_t>(rec.item)] << '\t' << buf << '\t';
    if (rec.has_timestamp) out << rec.timestamp;
    out << '\n';
  }
  if (!out) throw DataError("write failure on '" + path.string() + "'");
}

namespace {

std::vector<core::Triplet> thresholded_triplets(const RawInteractions& raw,
                                                double threshold, bool graded) {
  std::vector<core::Triplet> triplets;
  triplets.reserve(raw.records.size());
  for (const auto& rec : raw.records) {
    if (rec.rating < threshold) continue;
    const double value = graded ? rec.rating : 1.0;
    if (!(value > 0.0)) continue;
    triplets.push_back({rec.user, rec.item, value});
  }
  if (triplets.empty())
    throw DataError("implicitization threshold " + std::to_string(threshold) +
                    " removed every interaction");
  return triplets;
}

}  // namespace

core::InteractionMatrix implicitize(const RawInteractions& raw, double threshold,
                                    bool graded) {
  try {
    return core::InteractionMatrix::from_triplets(
        raw.num_users(), raw.num_items(), thresholded_triplets(raw, threshold, graded));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid interaction data: ") + e.what());
  }
}

CompactedInteractions implicitize_compacted(const RawInteractions& raw, double threshold,
                                            bool graded) {
  auto triplets = thresholded_triplets(raw, threshold, graded);

  std::vector<std::int32_t> user_map(static_cast<std::size_t>(raw.num_users()), -1);
  std::vector<std::int32_t> item_map(static_cast<std::size_t>(raw.num_items()), -1);
  for (const auto& t : triplets) {
    user_map[static_cast<std::size_t>(t.row)] = 0;
    item_map[static_cast<std::size_t>(t.col)] = 0;
  }
  CompactedInteractions out;
  for (std::int32_t u = 0; u < raw.num_users(); ++u) {
    if (user_map[static_cast<std::size_t>(u)] == 0) {
      user_map[static_cast<std::size_t>(u)] =
          static_cast<std::int32_t>(out.kept_users.size());
      out.kept_users.push_back(u);
    }
  }
  for (std::int32_t i = 0; i < raw.num_items(); ++i) {
    if (item_map[static_cast<std::size_t>(i)] == 0) {
      item_map[static_cast<std::size_t>(i)] =
          static_cast<std::int32_t>(out.kept_items.size());
      out.kept_items.push_back(i);
    }
  }
  for (auto& t : triplets) {
    t.row = user_map[static_cast<std::size_t>(t.row)];
    t.col = item_map[static_cast<std::size_t>(t.col)];
  }
  try {
    out.matrix = core::InteractionMatrix::from_triplets(
        static_cast<std::int32_t>(out.kept_users.size()),
        static_cast<std::int32_t>(out.kept_items.size()), std::move(triplets));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid interaction data: ") + e.what());
  }
  return out;
}

}  // namespace carousel::io
