#pragma once

#include <memory>
#include <string>
#include <vector>

#include "carousel/io/grid_io.hpp"
#include "carousel/metrics/page_metrics.hpp"
#include "carousel/rec/recommend.hpp"

namespace carousel::experiment {

// Supplies one carousel per user: either a trained model or a precomputed
// grid. Implementations must be safe to call concurrently for different
// users.
class RowProvider {
 public:
  virtual ~RowProvider() = default;
  virtual const std::string& name() const = 0;
  virtual core::Carousel row(std::int32_t user, int cutoff) const = 0;
};

class ModelRowProvider final : public RowProvider {
 public:
  ModelRowProvider(std::shared_ptr<const rec::TrainedModel> model,
                   std::shared_ptr<const core::InteractionMatrix> train,
                   std::string name);
  const std::string& name() const override { return name_; }
  core::Carousel row(std::int32_t user, int cutoff) const override;

 private:
  std::shared_ptr<const rec::TrainedModel> model_;
  std::shared_ptr<const core::InteractionMatrix> train_;
  std::string name_;
};

// Serves row `row_index` of the pages in a grid file; users missing from the
// grid get an empty carousel.
class GridRowProvider final : public RowProvider {
 public:
  GridRowProvider(std::shared_ptr<const io::PageSet> pages, int row_index,
                  std::string name);
  const std::string& name() const override { return name_; }
  core::Carousel row(std::int32_t user, int cutoff) const override;

 private:
  std::shared_ptr<const io::PageSet> pages_;
  int row_index_;
  std::string name_;
};

struct EvalOptions {
  int cutoff = 10;
  core::DiscountWeights weights;
  int threads = 1;
};

// Classic single-list evaluation: one-row pages built from the provider.
// NDCG2D equals NDCG in this mode by definition.
metrics::PageMetrics evaluate_individual(const RowProvider& provider,
                                         const core::GroundTruth& gt,
                                         const EvalOptions& options);

// Fixed rows 1..m; the candidate fills row m+1. fixed_cutoffs, when
// non-empty, gives a per-row length for the fixed rows (one entry per
// provider); otherwise every row uses options.cutoff.
struct CarouselScenario {
  std::vector<const RowProvider*> fixed;
  std::vector<int> fixed_cutoffs;
  EvalOptions options;
};

// Page metrics when the candidate row is present but consists entirely of
// padding placeholders. This is the improvement baseline: it keeps the full
// page geometry, so list-size-dependent denominators match the real pages.
metrics::PageMetrics evaluate_carousel_baseline(const CarouselScenario& scenario,
                                                const core::GroundTruth& gt);

metrics::PageMetrics evaluate_carousel_candidate(const CarouselScenario& scenario,
                                                 const RowProvider& candidate,
                                                 const core::GroundTruth& gt);

struct CarouselResult {
  metrics::PageMetrics page;
  metrics::PageMetrics baseline;
  double improvement_percent = 0.0;  // MAP improvement over the baseline
};

CarouselResult evaluate_carousel(const CarouselScenario& scenario,
                                 const RowProvider& candidate,
                                 const core::GroundTruth& gt);

// (value - baseline) / baseline * 100. Throws for baseline <= 0.
double improvement(double value, double baseline);

}  // namespace carousel::experiment
