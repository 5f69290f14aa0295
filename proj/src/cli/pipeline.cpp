#include "carousel/cli/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "carousel/core/errors.hpp"
#include "carousel/core/parallel.hpp"
#include "carousel/experiment/algorithms.hpp"
#include "carousel/experiment/evaluate.hpp"
#include "carousel/experiment/rank_table.hpp"
#include "carousel/experiment/report.hpp"
#include "carousel/experiment/tuning.hpp"
#include "carousel/io/features.hpp"
#include "carousel/io/grid_io.hpp"
#include "carousel/rec/model_io.hpp"

namespace carousel::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path split_path(const RunConfig& c) { return c.output_dir / "split.tsv"; }
fs::path ids_path(const RunConfig& c) { return c.output_dir / "ids.tsv"; }
fs::path tuned_dir(const RunConfig& c) { return c.output_dir / "tuned"; }
fs::path tuned_params_path(const RunConfig& c, const std::string& name) {
  return tuned_dir(c) / (name + ".json");
}
fs::path trials_path(const RunConfig& c, const std::string& name) {
  return tuned_dir(c) / (name + "_trials.tsv");
}
fs::path results_csv_path(const RunConfig& c) { return c.output_dir / "results.csv"; }
fs::path results_md_path(const RunConfig& c) { return c.output_dir / "results.md"; }
fs::path model_path(const RunConfig& c, const std::string& name) {
  return c.output_dir / "models" / (name + ".model");
}

// Reuses a persisted model when its tag and hyperparameters match; trains and
// saves the container otherwise.
std::shared_ptr<const rec::TrainedModel> train_or_load(
    const RunConfig& config, const std::string& name, const rec::HyperParams& params,
    const experiment::TrainData& data) {
  const auto path = model_path(config, name);
  if (fs::exists(path)) {
    auto loaded = rec::load_model(path);
    if (loaded.tag == name && loaded.params == params)
      return std::make_shared<const rec::TrainedModel>(std::move(loaded));
  }
  auto model = experiment::train_algorithm(name, params, data);
  fs::create_directories(path.parent_path());
  rec::save_model(path, model);
  return std::make_shared<const rec::TrainedModel>(std::move(model));
}

core::DatasetSplit load_prepared_split(const RunConfig& config) {
  if (!fs::exists(split_path(config)))
    throw DataError("no prepared split at '" + split_path(config).string() +
                    "'; run `prepare` first");
  return io::load_split(split_path(config));
}

// Resolves feature matrices for the algorithms that need them. A needed but
// unconfigured feature file stays null here: the affected algorithm fails on
// its own (gap row) instead of aborting the whole run.
experiment::TrainData make_train_data(const RunConfig& config,
                                      const core::DatasetSplit& split,
                                      const std::vector<std::string>& tags) {
  experiment::TrainData data;
  data.train = std::make_shared<const core::InteractionMatrix>(split.train);
  const bool item_needed = std::any_of(tags.begin(), tags.end(), [](const auto& t) {
    return experiment::requires_item_features(t);
  });
  const bool user_needed = std::any_of(tags.begin(), tags.end(), [](const auto& t) {
    return experiment::requires_user_features(t);
  });
  if (item_needed && config.item_features) {
    const auto maps = io::load_id_maps(ids_path(config));
    io::RawInteractions stub;
    stub.item_ids = maps.item_ids;
    stub.item_index = maps.item_index;
    auto parsed = io::parse_item_features(*config.item_features, config.item_tags,
                                          config.format, stub);
    data.item_features =
        std::make_shared<const core::FeatureMatrix>(std::move(parsed.features));
  }
  if (user_needed && config.user_features) {
    const auto maps = io::load_id_maps(ids_path(config));
    auto parsed = io::parse_entity_features(*config.user_features, config.format,
                                            maps.user_index,
                                            static_cast<std::int32_t>(maps.user_ids.size()));
    data.user_features =
        std::make_shared<const core::FeatureMatrix>(std::move(parsed.features));
  }
  return data;
}

rec::HyperParams resolve_params(const RunConfig& config, const AlgorithmSpec& spec,
                                const experiment::TrainData& data) {
  rec::HyperParams params = experiment::default_params(spec.name, data);
  if (fs::exists(tuned_params_path(config, spec.name))) {
    std::ifstream in(tuned_params_path(config, spec.name));
    json j;
    in >> j;
    for (const auto& [key, value] : j.at("params").items())
      params.set(key, value.get<double>());
  }
  for (const auto& [key, value] : spec.params.values) params.set(key, value);
  return params;
}

void write_trials(const fs::path& path, const std::string& tag, int budget,
                  std::uint64_t seed, const experiment::TuneResult& result) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << "# carousel-trials v1 algorithm=" << tag << " budget=" << budget
      << " seed=" << seed << "\n";
  // Union of parameter names, sorted, as stable columns.
  std::map<std::string, int> columns;
  for (const auto& trial : result.trials)
    for (const auto& [key, value] : trial.params.values) columns.emplace(key, 0);
  out << "trial\tvalidation_map\tstatus";
  for (const auto& [key, unused] : columns) out << '\t' << key;
  out << '\n';
  char buf[64];
  for (const auto& trial : result.trials) {
    std::snprintf(buf, sizeof buf, "%.17g", trial.validation_map);
    out << trial.index << '\t' << (trial.failed ? "failed" : buf) << '\t'
        << (trial.failed ? trial.error : "ok");
    for (const auto& [key, unused] : columns) {
      out << '\t';
      if (trial.params.has(key)) {
        std::snprintf(buf, sizeof buf, "%.17g", trial.params.get_or(key, 0.0));
        out << buf;
      }
    }
    out << '\n';
  }
}

struct PreparedRun {
  core::DatasetSplit split;
  experiment::TrainData data;
  core::GroundTruth test_gt;
  experiment::EvalOptions options;
};

PreparedRun load_run_inputs(const RunConfig& config,
                            const std::vector<std::string>& tags) {
  PreparedRun run;
  run.split = load_prepared_split(config);
  run.data = make_train_data(config, run.split, tags);
  run.test_gt = core::build_ground_truth(run.split.test, config.graded_relevance);
  run.options.cutoff = config.cutoff;
  run.options.weights = config.weights;
  run.options.threads = core::resolve_threads(config.threads);
  return run;
}

}  // namespace

PrepareStats cmd_prepare(const RunConfig& config, std::ostream& log) {
  const auto raw = io::parse_interactions(config.interactions, config.format);
  const auto matrix =
      io::implicitize(raw, config.implicit_threshold, config.graded_relevance);
  const auto split = io::split_holdout(matrix, config.split);

  fs::create_directories(config.output_dir);
  io::save_split(split_path(config), split);
  io::save_id_maps(ids_path(config), raw);

  PrepareStats stats;
  stats.users = matrix.rows();
  stats.items = matrix.cols();
  stats.interactions = static_cast<std::int64_t>(raw.records.size());
  stats.kept = matrix.nnz();
  stats.density = static_cast<double>(matrix.nnz()) /
                  (static_cast<double>(matrix.rows()) * static_cast<double>(matrix.cols()));
  stats.train = split.train.nnz();
  stats.validation = split.validation.nnz();
  stats.test = split.test.nnz();

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "prepared: users=%d items=%d parsed=%lld kept=%lld density=%.6f "
                "split=%lld/%lld/%lld seed=%llu",
                stats.users, stats.items,
                static_cast<long long>(stats.interactions),
                static_cast<long long>(stats.kept), stats.density,
                static_cast<long long>(stats.train),
                static_cast<long long>(stats.validation),
                static_cast<long long>(stats.test),
                static_cast<unsigned long long>(config.split.seed));
  log << buf << "\n";
  return stats;
}

void cmd_tune(const RunConfig& config, std::ostream& log) {
  std::vector<std::string> tags;
  for (const auto& spec : config.algorithms)
    if (spec.tune) tags.push_back(spec.name);
  if (tags.empty()) {
    log << "tune: no algorithm declares tune ranges\n";
    return;
  }
  auto run = load_run_inputs(config, tags);
  const auto validation_gt = core::build_ground_truth(run.split.validation, false);
  fs::create_directories(tuned_dir(config));

  for (const auto& spec : config.algorithms) {
    if (!spec.tune) continue;
    experiment::ParamSpace space =
        spec.tune->empty() ? experiment::default_space(spec.name, run.data) : *spec.tune;
    const auto result = experiment::tune_random_search(
        spec.name, space, config.tune_budget, config.tune_seed, run.data, validation_gt,
        run.options);

    json best;
    best["algorithm"] = spec.name;
    best["validation_map"] = result.best_map;
    best["params"] = json::object();
    for (const auto& [key, value] : result.best_params.values)
      best["params"][key] = value;
    std::ofstream out(tuned_params_path(config, spec.name));
    out << best.dump(2) << "\n";
    write_trials(trials_path(config, spec.name), spec.name, config.tune_budget,
                 config.tune_seed, result);

    char buf[160];
    std::snprintf(buf, sizeof buf, "tuned %s: validation MAP@%d = %.6f", spec.name.c_str(),
                  config.cutoff, result.best_map);
    log << buf << "\n";
  }
}

void cmd_run(const RunConfig& config, std::ostream& log) {
  if (config.algorithms.empty())
    throw ConfigError("run: the config lists no algorithms");
  if (config.fixed_providers.empty() && !config.fixed_grid)
    throw ConfigError("run: fixed_carousel must name providers or a grid file");

  std::vector<std::string> tags;
  for (const auto& spec : config.algorithms) tags.push_back(spec.name);
  for (const auto& name : config.fixed_providers) tags.push_back(name);
  auto run = load_run_inputs(config, tags);

  // Train candidates; failures become gap rows.
  struct Candidate {
    std::string name;
    std::shared_ptr<const rec::TrainedModel> model;  // null when failed
    std::string error;
  };
  std::vector<Candidate> candidates;
  std::map<std::string, std::shared_ptr<const rec::TrainedModel>> trained;
  for (const auto& spec : config.algorithms) {
    Candidate c;
    c.name = spec.name;
    try {
      auto model = train_or_load(config, spec.name,
                                 resolve_params(config, spec, run.data), run.data);
      if (spec.exclude_seen && model->exclude_seen != *spec.exclude_seen) {
        auto adjusted = *model;
        adjusted.exclude_seen = *spec.exclude_seen;
        model = std::make_shared<const rec::TrainedModel>(std::move(adjusted));
      }
      c.model = model;
      trained[spec.name] = c.model;
    } catch (const std::exception& e) {
      c.error = e.what();
      log << "warning: training '" << spec.name << "' failed: " << e.what() << "\n";
    }
    candidates.push_back(std::move(c));
  }

  // Fixed carousel providers.
  std::vector<std::unique_ptr<experiment::RowProvider>> fixed_owned;
  std::string fixed_label;
  if (config.fixed_grid) {
    const auto grid = io::load_grid(*config.fixed_grid);
    const auto pages = std::make_shared<const io::PageSet>(std::move(grid.pages));
    int fixed_rows = 0;
    for (const auto& [user, page] : *pages)
      fixed_rows = std::max(fixed_rows, page.num_rows());
    if (fixed_rows == 0) throw DataError("fixed grid holds no pages");
    for (int r = 0; r < fixed_rows; ++r)
      fixed_owned.push_back(std::make_unique<experiment::GridRowProvider>(
          pages, r, "grid:" + config.fixed_grid->filename().string()));
    fixed_label = "grid:" + config.fixed_grid->filename().string();
  } else {
    for (const auto& name : config.fixed_providers) {
      auto it = trained.find(name);
      std::shared_ptr<const rec::TrainedModel> model;
      if (it != trained.end()) {
        model = it->second;
      } else {
        AlgorithmSpec spec;
        spec.name = name;
        model = train_or_load(config, name, resolve_params(config, spec, run.data),
                              run.data);
      }
      fixed_owned.push_back(std::make_unique<experiment::ModelRowProvider>(
          model, run.data.train, experiment::display_label(name)));
    }
    fixed_label = experiment::display_label(config.fixed_providers.front());
  }

  experiment::CarouselScenario scenario;
  for (const auto& provider : fixed_owned) scenario.fixed.push_back(provider.get());
  scenario.options = run.options;

  experiment::ReportTable table;
  table.fixed_label = fixed_label;
  table.fixed_individual =
      experiment::evaluate_individual(*scenario.fixed.front(), run.test_gt, run.options);
  table.baseline = experiment::evaluate_carousel_baseline(scenario, run.test_gt);
  const double individual_base = table.fixed_individual.average_precision;
  const double carousel_base = table.baseline.average_precision;
  if (!(individual_base > 0.0) || !(carousel_base > 0.0))
    throw ComputeError("run: the fixed carousel has zero MAP; improvements undefined");

  std::vector<experiment::RankInput> rank_inputs;
  for (auto& candidate : candidates) {
    experiment::ResultRow row;
    row.label = experiment::display_label(candidate.name);
    if (!candidate.model) {
      row.failed = true;
      table.rows.push_back(std::move(row));
      continue;
    }
    const experiment::ModelRowProvider provider(candidate.model, run.data.train,
                                                row.label);
    row.individual = experiment::evaluate_individual(provider, run.test_gt, run.options);
    row.carousel =
        experiment::evaluate_carousel_candidate(scenario, provider, run.test_gt);
    row.improvement_individual =
        experiment::improvement(row.individual.average_precision, individual_base);
    row.improvement_carousel =
        experiment::improvement(row.carousel.average_precision, carousel_base);
    rank_inputs.push_back(
        {row.label, row.individual.average_precision, row.carousel.average_precision});
    table.rows.push_back(std::move(row));
  }
  if (rank_inputs.empty()) throw ComputeError("run: every algorithm failed to train");

  const auto ranks = experiment::rank_table(rank_inputs);
  std::vector<int> individual_ranks, carousel_ranks;
  std::size_t next = 0;
  for (auto& row : table.rows) {
    if (row.failed) continue;
    row.rank_individual = ranks[next].rank_individual;
    row.rank_carousel = ranks[next].rank_carousel;
    row.delta_rank = ranks[next].delta_rank;
    individual_ranks.push_back(row.rank_individual);
    carousel_ranks.push_back(row.rank_carousel);
    ++next;
  }
  table.kendall_tau = experiment::kendall_tau(individual_ranks, carousel_ranks);

  fs::create_directories(config.output_dir);
  experiment::write_results_csv(results_csv_path(config), table);
  experiment::write_results_markdown(results_md_path(config), table);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "run: %zu algorithms evaluated, kendall tau %.4f, report at %s",
                rank_inputs.size(), table.kendall_tau,
                results_csv_path(config).string().c_str());
  log << buf << "\n";
}

void cmd_report(const RunConfig& config, std::ostream& log) {
  const auto table = experiment::read_results_csv(results_csv_path(config));
  experiment::write_results_markdown(results_md_path(config), table);
  log << "report: rendered " << results_md_path(config).string() << "\n";
}

}  // namespace carousel::cli
