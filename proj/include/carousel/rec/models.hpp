#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "carousel/core/sparse.hpp"

namespace carousel::rec {

enum class Orientation : std::uint8_t { ItemBased = 0, UserBased = 1 };

// Row-truncated entity-to-entity similarity (top-k per row, zero diagonal).
struct SimilarityModel {
  core::SparseMatrix similarity;
  Orientation orientation = Orientation::ItemBased;
};

// Truncated SVD factors; scores(u, i) = (U diag(sigma) V^T)(u, i).
struct FactorModel {
  Eigen::MatrixXd user_factors;   // num_users x f
  Eigen::MatrixXd item_factors;   // num_items x f
  Eigen::VectorXd singular_values;  // length f, nonincreasing
};

// Dense item-item weight matrix with an exactly zero diagonal.
struct DenseWeightModel {
  Eigen::MatrixXd weights;
};

// Per-item interaction counts from the training matrix.
struct PopularityModel {
  std::vector<std::int64_t> popularity;
};

// Algorithm-specific hyperparameter map. Values are stored as doubles;
// integer parameters (k, f) are rounded on read.
struct HyperParams {
  std::map<std::string, double> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  double get_or(const std::string& key, double dflt) const {
    const auto it = values.find(key);
    return it == values.end() ? dflt : it->second;
  }
  int get_int_or(const std::string& key, int dflt) const {
    const auto it = values.find(key);
    return it == values.end() ? dflt : static_cast<int>(std::llround(it->second));
  }
  void set(const std::string& key, double v) { values[key] = v; }

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

using ModelVariant =
    std::variant<PopularityModel, SimilarityModel, DenseWeightModel, FactorModel>;

// A fitted model together with the metadata needed to persist and rank it.
struct TrainedModel {
  std::string tag;  // algorithm id, e.g. "itemknn-cf"
  HyperParams params;
  bool exclude_seen = true;
  ModelVariant model;
};

}  // namespace carousel::rec
