#include "carousel/experiment/tuning.hpp"

#include <cmath>

#include "carousel/core/errors.hpp"
#include "carousel/core/rng.hpp"

namespace carousel::experiment {

ParamKind default_kind_for(const std::string& param) {
  if (param == "k" || param == "f") return ParamKind::UniformInt;
  if (param == "shrink" || param == "lambda") return ParamKind::LogUniformReal;
  return ParamKind::UniformReal;
}

ParamSpace default_space(const std::string& tag, const TrainData& data) {
  const auto items = data.train->cols();
  const auto users = data.train->rows();
  ParamSpace space;
  const auto add = [&space](const std::string& name, double lo, double hi) {
    space[name] = {lo, hi, default_kind_for(name)};
  };
  const auto k_range = [&](std::int32_t n) {
    add("k", 5.0, std::max(6.0, static_cast<double>(n - 1)));
  };
  if (tag == "itemknn-cf" || tag == "itemknn-cbf") {
    k_range(items);
    add("shrink", 1e-2, 1e3);
  } else if (tag == "userknn-cf" || tag == "userknn-cbf") {
    k_range(users);
    add("shrink", 1e-2, 1e3);
  } else if (tag == "itemknn-cfcbf") {
    k_range(items);
    add("shrink", 1e-2, 1e3);
    add("content_weight", 0.1, 5.0);
  } else if (tag == "userknn-cfcbf") {
    k_range(users);
    add("shrink", 1e-2, 1e3);
    add("content_weight", 0.1, 5.0);
  } else if (tag == "p3alpha") {
    k_range(items);
    add("alpha", 0.0, 2.0);
  } else if (tag == "rp3beta") {
    k_range(items);
    add("alpha", 0.0, 2.0);
    add("beta", 0.0, 2.0);
  } else if (tag == "ease") {
    add("lambda", 1.0, 1e4);
  } else if (tag == "puresvd") {
    const auto min_dim = std::min(users, items);
    add("f", 1.0, std::max(2.0, static_cast<double>(std::min<std::int32_t>(min_dim, 300))));
  } else if (tag == "toppop") {
    // nothing to tune
  } else {
    throw ConfigError("unknown algorithm '" + tag + "'");
  }
  return space;
}

TuneResult tune_random_search(const std::string& tag, const ParamSpace& space,
                              int budget, std::uint64_t seed, const TrainData& data,
                              const core::GroundTruth& validation_gt,
                              const EvalOptions& options) {
  if (budget < 1) throw ConfigError("search budget must be >= 1");
  for (const auto& [name, range] : space)
    if (!(range.lo <= range.hi))
      throw ConfigError("invalid range for parameter '" + name + "'");

  core::Rng rng(seed);
  TuneResult result;
  for (int trial = 0; trial < budget; ++trial) {
    rec::HyperParams params = default_params(tag, data);
    for (const auto& [name, range] : space) {
      double value = 0.0;
      switch (range.kind) {
        case ParamKind::UniformInt:
          value = static_cast<double>(
              rng.uniform_int(static_cast<std::int64_t>(std::llround(range.lo)),
                              static_cast<std::int64_t>(std::llround(range.hi))));
          break;
        case ParamKind::LogUniformReal:
          value = rng.log_uniform(range.lo, range.hi);
          break;
        case ParamKind::UniformReal:
          value = rng.uniform(range.lo, range.hi);
          break;
      }
      params.set(name, value);
    }

    TrialRecord record;
    record.index = trial;
    record.params = params;
    try {
      const auto model = std::make_shared<const rec::TrainedModel>(
          train_algorithm(tag, params, data));
      const ModelRowProvider provider(model, data.train, tag);
      record.validation_map =
          evaluate_individual(provider, validation_gt, options).average_precision;
    } catch (const std::exception& e) {
      record.failed = true;
      record.error = e.what();
    }
    if (!record.failed && record.validation_map > result.best_map) {
      result.best_map = record.validation_map;
      result.best_params = record.params;
    }
    result.trials.push_back(std::move(record));
  }
  if (result.best_map < 0.0)
    throw ComputeError("random search: every trial failed to train");
  return result;
}

}  // namespace carousel::experiment
