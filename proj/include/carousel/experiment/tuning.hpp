#pragma once

#include <map>

#include "carousel/core/page.hpp"
#include "carousel/experiment/algorithms.hpp"
#include "carousel/experiment/evaluate.hpp"

namespace carousel::experiment {

enum class ParamKind { UniformReal, LogUniformReal, UniformInt };

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  ParamKind kind = ParamKind::UniformReal;
};

// Ordered by parameter name so the sampling stream is reproducible.
using ParamSpace = std::map<std::string, ParamRange>;

// k and f are sampled as integers; shrink and lambda log-uniformly.
ParamKind default_kind_for(const std::string& param);

ParamSpace default_space(const std::string& tag, const TrainData& data);

struct TrialRecord {
  int index = 0;
  rec::HyperParams params;
  double validation_map = 0.0;
  bool failed = false;
  std::string error;
};

struct TuneResult {
  rec::HyperParams best_params;
  double best_map = -1.0;
  std::vector<TrialRecord> trials;
};

// Seeded random search: budget configurations sampled from the space, each
// trained on `data` and scored by individual MAP at `options.cutoff` on the
// validation ground truth. Ties keep the earliest trial. Throws when every
// trial fails to train.
TuneResult tune_random_search(const std::string& tag, const ParamSpace& space,
                              int budget, std::uint64_t seed, const TrainData& data,
                              const core::GroundTruth& validation_gt,
                              const EvalOptions& options);

}  // namespace carousel::experiment
