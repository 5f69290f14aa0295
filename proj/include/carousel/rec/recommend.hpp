#pragma once

#include <string>
#include <vector>

#include "carousel/core/page.hpp"
#include "carousel/rec/models.hpp"

namespace carousel::rec {

// Per-user scores over all items. Throws std::out_of_range for an unknown
// user index.
std::vector<double> score_user(const PopularityModel& model,
                               const core::InteractionMatrix& train, std::int32_t user);
std::vector<double> score_user(const SimilarityModel& model,
                               const core::InteractionMatrix& train, std::int32_t user);
std::vector<double> score_user(const DenseWeightModel& model,
                               const core::InteractionMatrix& train, std::int32_t user);
std::vector<double> score_user(const FactorModel& model,
                               const core::InteractionMatrix& train, std::int32_t user);

std::vector<double> score_user(const TrainedModel& model,
                               const core::InteractionMatrix& train, std::int32_t user);

// Top-n by score, ties by ascending item index. Items flagged in `skip` are
// never returned; fewer than n items come back when candidates run out.
core::Carousel top_n_items(const std::vector<double>& scores,
                           const std::vector<std::uint8_t>* skip, int n,
                           std::string provider);

// Scores the user with the model and extracts the top-n carousel. With
// exclude_seen, the user's training items are removed from the candidates.
template <typename Model>
core::Carousel recommend(const Model& model, const core::InteractionMatrix& train,
                         std::int32_t user, int n, bool exclude_seen,
                         std::string provider) {
  if (n < 1) throw std::invalid_argument("recommendation length must be >= 1");
  const auto scores = score_user(model, train, user);
  if (!exclude_seen) return top_n_items(scores, nullptr, n, std::move(provider));
  std::vector<std::uint8_t> skip(scores.size(), 0);
  for (const auto item : train.row_cols(user)) skip[static_cast<std::size_t>(item)] = 1;
  return top_n_items(scores, &skip, n, std::move(provider));
}

core::Carousel recommend(const TrainedModel& model, const core::InteractionMatrix& train,
                         std::int32_t user, int n, std::string provider);

}  // namespace carousel::rec
