#include "carousel/experiment/evaluate.hpp"

#include <stdexcept>

#include "carousel/core/parallel.hpp"

namespace carousel::experiment {

ModelRowProvider::ModelRowProvider(std::shared_ptr<const rec::TrainedModel> model,
                                   std::shared_ptr<const core::InteractionMatrix> train,
                                   std::string name)
    : model_(std::move(model)), train_(std::move(train)), name_(std::move(name)) {}

core::Carousel ModelRowProvider::row(std::int32_t user, int cutoff) const {
  return rec::recommend(*model_, *train_, user, cutoff, name_);
}

GridRowProvider::GridRowProvider(std::shared_ptr<const io::PageSet> pages, int row_index,
                                 std::string name)
    : pages_(std::move(pages)), row_index_(row_index), name_(std::move(name)) {}

core::Carousel GridRowProvider::row(std::int32_t user, int cutoff) const {
  const auto it = pages_->find(user);
  if (it == pages_->end() || row_index_ >= it->second.num_rows())
    return core::Carousel{{}, name_};
  core::Carousel row = it->second.rows()[static_cast<std::size_t>(row_index_)];
  if (static_cast<int>(row.items.size()) > cutoff) row.items.resize(static_cast<std::size_t>(cutoff));
  return row;
}

namespace {

// Unique placeholder items for one padding row; ids are negative and
// page-local, so they never collide with catalog items or each other.
core::Carousel padding_row(int length, const std::string& provider) {
  core::Carousel row;
  row.provider = provider;
  row.items.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) row.items.push_back(-(i + 1));
  return row;
}

using PageBuilder = std::function<core::CarouselPage(std::int32_t)>;

metrics::PageMetrics evaluate_built_pages(const core::GroundTruth& gt,
                                          const EvalOptions& options,
                                          const PageBuilder& build) {
  std::vector<core::CarouselPage> pages(gt.users.size());
  core::parallel_for(static_cast<std::int64_t>(gt.users.size()), options.threads,
                     [&](std::int64_t begin, std::int64_t end) {
                       for (std::int64_t u = begin; u < end; ++u) {
                         if (gt.users[static_cast<std::size_t>(u)].empty()) continue;
                         pages[static_cast<std::size_t>(u)] =
                             build(static_cast<std::int32_t>(u));
                       }
                     });
  return metrics::evaluate_page_set(pages, gt, options.weights, options.threads);
}

void check_scenario(const CarouselScenario& scenario) {
  if (scenario.fixed.empty())
    throw std::invalid_argument("carousel scenario needs at least one fixed provider");
  if (!scenario.fixed_cutoffs.empty()) {
    if (scenario.fixed_cutoffs.size() != scenario.fixed.size())
      throw std::invalid_argument("fixed_cutoffs must match the fixed provider count");
    for (const int c : scenario.fixed_cutoffs)
      if (c < 1) throw std::invalid_argument("row cutoffs must be >= 1");
  }
}

// Rows for the fixed part of the page; empty provider rows are dropped.
std::vector<core::Carousel> fixed_rows(const CarouselScenario& scenario,
                                       std::int32_t user) {
  std::vector<core::Carousel> rows;
  rows.reserve(scenario.fixed.size());
  for (std::size_t r = 0; r < scenario.fixed.size(); ++r) {
    const int cutoff = scenario.fixed_cutoffs.empty()
                           ? scenario.options.cutoff
                           : scenario.fixed_cutoffs[r];
    auto row = scenario.fixed[r]->row(user, cutoff);
    if (!row.items.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

metrics::PageMetrics evaluate_individual(const RowProvider& provider,
                                         const core::GroundTruth& gt,
                                         const EvalOptions& options) {
  auto pm = evaluate_built_pages(gt, options, [&](std::int32_t user) {
    auto row = provider.row(user, options.cutoff);
    if (row.items.empty()) return core::CarouselPage{};  // counts as all-zero metrics
    return core::CarouselPage::build({std::move(row)});
  });
  pm.ndcg2d = pm.ndcg;
  return pm;
}

metrics::PageMetrics evaluate_carousel_baseline(const CarouselScenario& scenario,
                                                const core::GroundTruth& gt) {
  check_scenario(scenario);
  return evaluate_built_pages(gt, scenario.options, [&](std::int32_t user) {
    auto rows = fixed_rows(scenario, user);
    rows.push_back(padding_row(scenario.options.cutoff, "padding"));
    return core::CarouselPage::build(std::move(rows));
  });
}

metrics::PageMetrics evaluate_carousel_candidate(const CarouselScenario& scenario,
                                                 const RowProvider& candidate,
                                                 const core::GroundTruth& gt) {
  check_scenario(scenario);
  return evaluate_built_pages(gt, scenario.options, [&](std::int32_t user) {
    auto rows = fixed_rows(scenario, user);
    auto row = candidate.row(user, scenario.options.cutoff);
    // An empty candidate row degenerates to the baseline geometry.
    rows.push_back(row.items.empty() ? padding_row(scenario.options.cutoff, candidate.name())
                                     : std::move(row));
    return core::CarouselPage::build(std::move(rows));
  });
}

CarouselResult evaluate_carousel(const CarouselScenario& scenario,
                                 const RowProvider& candidate,
                                 const core::GroundTruth& gt) {
  CarouselResult result;
  result.baseline = evaluate_carousel_baseline(scenario, gt);
  result.page = evaluate_carousel_candidate(scenario, candidate, gt);
  result.improvement_percent =
      improvement(result.page.average_precision, result.baseline.average_precision);
  return result;
}

double improvement(double value, double baseline) {
  if (!(baseline > 0.0))
    throw std::invalid_argument("improvement baseline must be > 0");
  return (value - baseline) / baseline * 100.0;
}

}  // namespace carousel::experiment
