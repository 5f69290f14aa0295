#include "carousel/rec/recommend.hpp"

#include <algorithm>
#include <stdexcept>

namespace carousel::rec {

namespace {

void check_user(const core::InteractionMatrix& train, std::int32_t user) {
  if (user < 0 || user >= train.rows())
    throw std::out_of_range("unknown user index " + std::to_string(user));
}

}  // namespace

std::vector<double> score_user(const PopularityModel& model,
                               const core::InteractionMatrix& train, std::int32_t user) {
  check_user(train, user);
  std::vector<double> scores(model.popularity.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i] = static_cast<double>(model.popularity[i]);
  return scores;
}

std::vector<double> score_user(const SimilarityModel& model,
                               const core::InteractionMatrix& train, std::int32_t user) {
  check_user(train, user);
  std::vector<double> scores(static_cast<std::size_t>(train.cols()), 0.0);
  if (model.orientation == Orientation::ItemBased) {
    // score(u, i) = sum_j r_uj * S(j, i)
    const auto items = train.row_cols(user);
    const auto vals = train.row_values(user);
    for (std::size_t t = 0; t < items.size(); ++t) {
      const auto sim_cols = model.similarity.row_cols(items[t]);
      const auto sim_vals = model.similarity.row_values(items[t]);
      for (std::size_t s = 0; s < sim_cols.size(); ++s)
        scores[static_cast<std::size_t>(sim_cols[s])] += vals[t] * sim_vals[s];
    }
  } else {
    // score(u, i) = sum_{v in topk(u)} s(u, v) * R(v, i)
    const auto neighbors = model.similarity.row_cols(user);
    const auto weights = model.similarity.row_values(user);
    for (std::size_t t = 0; t < neighbors.size(); ++t) {
      const auto items = train.row_cols(neighbors[t]);
      const auto vals = train.row_values(neighbors[t]);
      for (std::size_t s = 0; s < items.size(); ++s)
        scores[static_cast<std::size_t>(items[s])] += weights[t] * vals[s];
    }
  }
  return scores;
}

std::vector<double> score_user(const DenseWeightModel& model,
                               const core::InteractionMatrix& train, std::int32_t user) {
  check_user(train, user);
  const auto n = static_cast<std::size_t>(model.weights.cols());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const auto items = train.row_cols(user);
  const auto vals = train.row_values(user);
  for (std::size_t t = 0; t < items.size(); ++t)
    acc += vals[t] * model.weights.row(items[t]).transpose();
  return {acc.data(), acc.data() + n};
}

std::vector<double> score_user(const FactorModel& model,
                               const core::InteractionMatrix& train, std::int32_t user) {
  check_user(train, user);
  const Eigen::VectorXd weighted =
      model.user_factors.row(user).transpose().cwiseProduct(model.singular_values);
  const Eigen::VectorXd scores = model.item_factors * weighted;
  return {scores.data(), scores.data() + scores.size()};
}

std::vector<double> score_user(const TrainedModel& model,
                               const core::InteractionMatrix& train, std::int32_t user) {
  return std::visit([&](const auto& m) { return score_user(m, train, user); }, model.model);
}

core::Carousel top_n_items(const std::vector<double>& scores,
                           const std::vector<std::uint8_t>* skip, int n,
                           std::string provider) {
  std::vector<std::int32_t> candidates;
  candidates.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (skip == nullptr || !(*skip)[i]) candidates.push_back(static_cast<std::int32_t>(i));
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), [&](std::int32_t a, std::int32_t b) {
                      const double sa = scores[static_cast<std::size_t>(a)];
                      const double sb = scores[static_cast<std::size_t>(b)];
                      if (sa != sb) return sa > sb;
                      return a < b;
                    });
  core::Carousel row;
  row.provider = std::move(provider);
  row.items.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep));
  return row;
}

core::Carousel recommend(const TrainedModel& model, const core::InteractionMatrix& train,
                         std::int32_t user, int n, std::string provider) {
  return std::visit(
      [&](const auto& m) {
        return recommend(m, train, user, n, model.exclude_seen, std::move(provider));
      },
      model.model);
}

}  // namespace carousel::rec
