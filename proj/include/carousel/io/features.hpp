#pragma once

#include <filesystem>
#include <optional>

#include "carousel/io/interactions.hpp"

namespace carousel::io {

struct ParsedFeatures {
  core::FeatureMatrix features;  // entities x features, binary incidence
  std::vector<std::string> feature_names;
  std::int64_t dropped_entities = 0;  // entities absent from the id map
};

// Item metadata file: '::' format is item::title::genre|genre, csv/tsv files
// carry a header item,title,genres. A trailing "(YYYY)" in the title becomes a
// per-decade feature. The optional tags file is user::item::tag[::timestamp]
// ('::') or a headered user,item,tag[,timestamp] csv/tsv; tags are lower-cased
// and de-duplicated per item. Items unknown to the interaction id map are
// dropped and counted.
ParsedFeatures parse_item_features(const std::filesystem::path& items_path,
                                   const std::optional<std::filesystem::path>& tags_path,
                                   FileFormat format, const RawInteractions& raw);

// Generic entity feature file: header entity,features with '|'-separated
// feature tokens (csv/tsv), or entity::feature|feature ('::').
ParsedFeatures parse_entity_features(
    const std::filesystem::path& path, FileFormat format,
    const std::unordered_map<std::string, std::int32_t>& entity_index,
    std::int32_t num_entities);

}  // namespace carousel::io
