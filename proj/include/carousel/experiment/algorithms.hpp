#pragma once

#include <memory>
#include <string>
#include <vector>

#include "carousel/rec/fit.hpp"

namespace carousel::experiment {

// Immutable inputs shared by training and tuning. Feature matrices are only
// needed by the CBF/CFCBF families.
struct TrainData {
  std::shared_ptr<const core::InteractionMatrix> train;
  std::shared_ptr<const core::FeatureMatrix> item_features;
  std::shared_ptr<const core::FeatureMatrix> user_features;
};

const std::vector<std::string>& algorithm_tags();
bool is_known_algorithm(const std::string& tag);
bool requires_item_features(const std::string& tag);
bool requires_user_features(const std::string& tag);

// Table-style display label, e.g. "itemknn-cf" -> "ItemKNN CF".
std::string display_label(const std::string& tag);

// TopPop recommends from global popularity and keeps seen items by default;
// all personalized models exclude them.
bool default_exclude_seen(const std::string& tag);

rec::HyperParams default_params(const std::string& tag, const TrainData& data);

// Trains one model. Integer parameters are clamped to the data dimensions.
rec::TrainedModel train_algorithm(const std::string& tag, const rec::HyperParams& params,
                                  const TrainData& data);

}  // namespace carousel::experiment
