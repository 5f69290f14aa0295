#include "carousel/experiment/algorithms.hpp"

#include <algorithm>

#include "carousel/core/errors.hpp"

namespace carousel::experiment {

namespace {

const core::FeatureMatrix& need_item_features(const TrainData& data,
                                              const std::string& tag) {
  if (!data.item_features || data.item_features->empty())
    throw ConfigError("algorithm '" + tag + "' requires item features");
  return *data.item_features;
}

const core::FeatureMatrix& need_user_features(const TrainData& data,
                                              const std::string& tag) {
  if (!data.user_features || data.user_features->empty())
    throw ConfigError("algorithm '" + tag + "' requires user features");
  return *data.user_features;
}

int clamp_k(const rec::HyperParams& p, std::int32_t n_entities) {
  const int k = p.get_int_or("k", 100);
  if (k < 1) throw ConfigError("k must be >= 1");
  return std::min<int>(k, std::max<std::int32_t>(1, n_entities - 1));
}

}  // namespace

const std::vector<std::string>& algorithm_tags() {
  static const std::vector<std::string> tags = {
      "toppop",        "itemknn-cf",    "userknn-cf",   "itemknn-cbf",
      "userknn-cbf",   "itemknn-cfcbf", "userknn-cfcbf", "p3alpha",
      "rp3beta",       "ease",          "puresvd"};
  return tags;
}

bool is_known_algorithm(const std::string& tag) {
  const auto& tags = algorithm_tags();
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool requires_item_features(const std::string& tag) {
  return tag == "itemknn-cbf" || tag == "itemknn-cfcbf";
}

bool requires_user_features(const std::string& tag) {
  return tag == "userknn-cbf" || tag == "userknn-cfcbf";
}

std::string display_label(const std::string& tag) {
  if (tag == "toppop") return "TopPop";
  if (tag == "itemknn-cf") return "ItemKNN CF";
  if (tag == "userknn-cf") return "UserKNN CF";
  if (tag == "itemknn-cbf") return "ItemKNN CBF";
  if (tag == "userknn-cbf") return "UserKNN CBF";
  if (tag == "itemknn-cfcbf") return "ItemKNN CFCBF";
  if (tag == "userknn-cfcbf") return "UserKNN CFCBF";
  if (tag == "p3alpha") return "P3alpha";
  if (tag == "rp3beta") return "RP3beta";
  if (tag == "ease") return "EASE-R";
  if (tag == "puresvd") return "PureSVD";
  return tag;
}

bool default_exclude_seen(const std::string& tag) { return tag != "toppop"; }

rec::HyperParams default_params(const std::string& tag, const TrainData& data) {
  rec::HyperParams p;
  const auto knn_defaults = [&] {
    p.set("k", 100);
    p.set("shrink", 10.0);
  };
  if (tag == "itemknn-cf" || tag == "userknn-cf" || tag == "itemknn-cbf" ||
      tag == "userknn-cbf") {
    knn_defaults();
  } else if (tag == "itemknn-cfcbf" || tag == "userknn-cfcbf") {
    knn_defaults();
    p.set("content_weight", 1.0);
  } else if (tag == "p3alpha") {
    p.set("k", 100);
    p.set("alpha", 1.0);
  } else if (tag == "rp3beta") {
    p.set("k", 100);
    p.set("alpha", 1.0);
    p.set("beta", 0.6);
  } else if (tag == "ease") {
    p.set("lambda", 100.0);
  } else if (tag == "puresvd") {
    const auto min_dim = std::min(data.train->rows(), data.train->cols());
    p.set("f", std::min<std::int32_t>(50, std::max<std::int32_t>(1, min_dim)));
    p.set("seed", 1.0);
  } else if (tag != "toppop") {
    throw ConfigError("unknown algorithm '" + tag + "'");
  }
  return p;
}

rec::TrainedModel train_algorithm(const std::string& tag, const rec::HyperParams& params,
                                  const TrainData& data) {
  if (!data.train || data.train->empty())
    throw DataError("training matrix is empty");
  const auto& train = *data.train;
  const double shrink = params.get_or("shrink", 10.0);
  const double content_weight = params.get_or("content_weight", 1.0);

  rec::TrainedModel model;
  model.tag = tag;
  model.params = params;
  model.exclude_seen = default_exclude_seen(tag);

  if (tag == "toppop") {
    model.model = rec::fit_toppop(train);
  } else if (tag == "itemknn-cf") {
    model.model = rec::fit_itemknn_cf(train, clamp_k(params, train.cols()), shrink);
  } else if (tag == "userknn-cf") {
    model.model = rec::fit_userknn_cf(train, clamp_k(params, train.rows()), shrink);
  } else if (tag == "itemknn-cbf") {
    model.model = rec::fit_itemknn_cbf(need_item_features(data, tag),
                                       clamp_k(params, train.cols()), shrink);
  } else if (tag == "userknn-cbf") {
    model.model = rec::fit_userknn_cbf(need_user_features(data, tag),
                                       clamp_k(params, train.rows()), shrink);
  } else if (tag == "itemknn-cfcbf") {
    model.model = rec::fit_itemknn_cfcbf(train, need_item_features(data, tag),
                                         clamp_k(params, train.cols()), shrink,
                                         content_weight);
  } else if (tag == "userknn-cfcbf") {
    model.model = rec::fit_userknn_cfcbf(train, need_user_features(data, tag),
                                         clamp_k(params, train.rows()), shrink,
                                         content_weight);
  } else if (tag == "p3alpha") {
    model.model = rec::fit_p3alpha(train, params.get_or("alpha", 1.0),
                                   clamp_k(params, train.cols()));
  } else if (tag == "rp3beta") {
    model.model = rec::fit_rp3beta(train, params.get_or("alpha", 1.0),
                                   params.get_or("beta", 0.6),
                                   clamp_k(params, train.cols()));
  } else if (tag == "ease") {
    model.model = rec::fit_easer(train, params.get_or("lambda", 100.0));
  } else if (tag == "puresvd") {
    const auto min_dim = std::min(train.rows(), train.cols());
    const int f = std::clamp<int>(params.get_int_or("f", 50), 1, min_dim);
    model.model = rec::fit_puresvd(
        train, f, static_cast<std::uint64_t>(params.get_or("seed", 1.0)));
  } else {
    throw ConfigError("unknown algorithm '" + tag + "'");
  }
  return model;
}

}  // namespace carousel::experiment
