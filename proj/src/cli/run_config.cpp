#include "carousel/cli/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "carousel/core/errors.hpp"
#include "carousel/experiment/algorithms.hpp"

namespace carousel::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& context) {
  for (const auto& [key, value] : obj.items())
    if (known.count(key) == 0)
      throw ConfigError("unknown key '" + key + "' in " + context);
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return j;
}

std::filesystem::path resolve_data_path(const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative()) {
    if (const char* base = std::getenv("CAROUSEL_DATA_DIR"); base != nullptr && *base != '\0')
      return std::filesystem::path(base) / p;
  }
  return p;
}

experiment::ParamSpace parse_tune_ranges(const json& obj, const std::string& context) {
  experiment::ParamSpace space;
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
      throw ConfigError("tune range for '" + key + "' in " + context +
                        " must be a [lo, hi] number pair");
    experiment::ParamRange range;
    range.lo = value[0].get<double>();
    range.hi = value[1].get<double>();
    range.kind = experiment::default_kind_for(key);
    if (!(range.lo <= range.hi))
      throw ConfigError("tune range for '" + key + "' in " + context + " has lo > hi");
    space[key] = range;
  }
  return space;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  const json root = load_json(path);
  reject_unknown_keys(root,
                      {"dataset", "preprocessing", "split", "evaluation",
                       "fixed_carousel", "algorithms", "tuning", "output_dir"},
                      "config root");
  RunConfig config;

  if (!root.contains("dataset") || !root["dataset"].is_object())
    throw ConfigError("config requires a 'dataset' object");
  const auto& dataset = root["dataset"];
  reject_unknown_keys(dataset,
                      {"interactions", "format", "item_features", "item_tags",
                       "user_features"},
                      "dataset");
  if (!dataset.contains("interactions") || !dataset["interactions"].is_string())
    throw ConfigError("dataset.interactions (string) is required");
  config.interactions = resolve_data_path(dataset["interactions"].get<std::string>());
  if (!dataset.contains("format") || !dataset["format"].is_string())
    throw ConfigError("dataset.format (string) is required");
  config.format = io::parse_file_format(dataset["format"].get<std::string>());
  if (dataset.contains("item_features"))
    config.item_features = resolve_data_path(dataset["item_features"].get<std::string>());
  if (dataset.contains("item_tags"))
    config.item_tags = resolve_data_path(dataset["item_tags"].get<std::string>());
  if (dataset.contains("user_features"))
    config.user_features = resolve_data_path(dataset["user_features"].get<std::string>());

  if (root.contains("preprocessing")) {
    const auto& pre = root["preprocessing"];
    reject_unknown_keys(pre, {"implicit_threshold", "graded_relevance"}, "preprocessing");
    if (pre.contains("implicit_threshold"))
      config.implicit_threshold = pre["implicit_threshold"].get<double>();
    if (pre.contains("graded_relevance"))
      config.graded_relevance = pre["graded_relevance"].get<bool>();
  }
  config.split.implicit_threshold = config.implicit_threshold;

  if (root.contains("split")) {
    const auto& split = root["split"];
    reject_unknown_keys(
        split, {"train_fraction", "validation_fraction", "test_fraction", "seed"},
        "split");
    if (split.contains("train_fraction"))
      config.split.train_fraction = split["train_fraction"].get<double>();
    if (split.contains("validation_fraction"))
      config.split.validation_fraction = split["validation_fraction"].get<double>();
    if (split.contains("test_fraction"))
      config.split.test_fraction = split["test_fraction"].get<double>();
    if (split.contains("seed")) config.split.seed = split["seed"].get<std::uint64_t>();
  }
  io::validate(config.split);

  if (root.contains("evaluation")) {
    const auto& eval = root["evaluation"];
    reject_unknown_keys(eval, {"cutoff", "alpha", "beta", "threads"}, "evaluation");
    if (eval.contains("cutoff")) config.cutoff = eval["cutoff"].get<int>();
    if (eval.contains("alpha")) config.weights.alpha = eval["alpha"].get<double>();
    if (eval.contains("beta")) config.weights.beta = eval["beta"].get<double>();
    if (eval.contains("threads")) config.threads = eval["threads"].get<int>();
  }
  if (config.cutoff < 1) throw ConfigError("evaluation.cutoff must be >= 1");
  if (!config.weights.valid())
    throw ConfigError("discount weights require alpha >= 1 and beta >= 1");
  if (config.threads < 0) throw ConfigError("evaluation.threads must be >= 0");

  if (root.contains("fixed_carousel")) {
    const auto& fixed = root["fixed_carousel"];
    reject_unknown_keys(fixed, {"providers", "grid"}, "fixed_carousel");
    if (fixed.contains("providers")) {
      for (const auto& p : fixed["providers"]) {
        const auto name = p.get<std::string>();
        if (!experiment::is_known_algorithm(name))
          throw ConfigError("unknown fixed provider '" + name + "'");
        config.fixed_providers.push_back(name);
      }
    }
    if (fixed.contains("grid"))
      config.fixed_grid = resolve_data_path(fixed["grid"].get<std::string>());
    if (!config.fixed_providers.empty() && config.fixed_grid)
      throw ConfigError("fixed_carousel: choose providers or a grid file, not both");
  }
  if (config.fixed_providers.empty() && !config.fixed_grid)
    config.fixed_providers.push_back("toppop");

  if (root.contains("algorithms")) {
    if (!root["algorithms"].is_array())
      throw ConfigError("'algorithms' must be an array");
    for (const auto& a : root["algorithms"]) {
      if (!a.is_object() || !a.contains("name"))
        throw ConfigError("each algorithm entry needs a 'name'");
      reject_unknown_keys(a, {"name", "params", "tune", "exclude_seen"},
                          "algorithm entry");
      AlgorithmSpec spec;
      spec.name = a["name"].get<std::string>();
      if (!experiment::is_known_algorithm(spec.name))
        throw ConfigError("unknown algorithm '" + spec.name + "'");
      if (a.contains("params")) {
        for (const auto& [key, value] : a["params"].items()) {
          if (!value.is_number())
            throw ConfigError("parameter '" + key + "' of '" + spec.name +
                              "' must be numeric");
          spec.params.set(key, value.get<double>());
        }
      }
      if (a.contains("tune"))
        spec.tune = parse_tune_ranges(a["tune"], "algorithm '" + spec.name + "'");
      if (a.contains("exclude_seen")) spec.exclude_seen = a["exclude_seen"].get<bool>();
      for (const auto& existing : config.algorithms)
        if (existing.name == spec.name)
          throw ConfigError("algorithm '" + spec.name + "' listed twice");
      config.algorithms.push_back(std::move(spec));
    }
  }

  if (root.contains("tuning")) {
    const auto& tuning = root["tuning"];
    reject_unknown_keys(tuning, {"budget", "seed"}, "tuning");
    if (tuning.contains("budget")) config.tune_budget = tuning["budget"].get<int>();
    if (tuning.contains("seed")) config.tune_seed = tuning["seed"].get<std::uint64_t>();
  }
  if (config.tune_budget < 1) throw ConfigError("tuning.budget must be >= 1");

  if (root.contains("output_dir"))
    config.output_dir = root["output_dir"].get<std::string>();

  return config;
}

void apply_overrides(RunConfig& config, const CliOverrides& overrides) {
  if (overrides.seed) config.split.seed = *overrides.seed;
  if (overrides.alpha) config.weights.alpha = *overrides.alpha;
  if (overrides.beta) config.weights.beta = *overrides.beta;
  if (overrides.cutoff) config.cutoff = *overrides.cutoff;
  if (overrides.threads) config.threads = *overrides.threads;
  if (overrides.output_dir) config.output_dir = *overrides.output_dir;
  if (overrides.fixed) {
    config.fixed_providers.clear();
    config.fixed_grid.reset();
    const std::string& value = *overrides.fixed;
    if (experiment::is_known_algorithm(value)) {
      config.fixed_providers.push_back(value);
    } else if (value.find(',') != std::string::npos) {
      std::stringstream ss(value);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (!experiment::is_known_algorithm(name))
          throw ConfigError("unknown fixed provider '" + name + "'");
        config.fixed_providers.push_back(name);
      }
    } else {
      config.fixed_grid = resolve_data_path(value);
    }
  }
  if (config.cutoff < 1) throw ConfigError("cutoff must be >= 1");
  if (!config.weights.valid())
    throw ConfigError("discount weights require alpha >= 1 and beta >= 1");
  io::validate(config.split);
}

std::string describe_plan(const RunConfig& config) {
  std::ostringstream out;
  out << "dataset: " << config.interactions.string() << " ("
      << io::file_format_name(config.format) << ")\n";
  out << "threshold: " << config.implicit_threshold
      << (config.graded_relevance ? " (graded relevance)" : " (binary relevance)") << "\n";
  out << "split: " << config.split.train_fraction << "/" << config.split.validation_fraction
      << "/" << config.split.test_fraction << " seed " << config.split.seed << "\n";
  out << "evaluation: cutoff " << config.cutoff << ", alpha " << config.weights.alpha
      << ", beta " << config.weights.beta << "\n";
  out << "fixed carousel: ";
  if (config.fixed_grid) {
    out << "grid " << config.fixed_grid->string();
  } else if (!config.fixed_providers.empty()) {
    for (std::size_t i = 0; i < config.fixed_providers.size(); ++i)
      out << (i ? ", " : "") << config.fixed_providers[i];
  } else {
    out << "(none)";
  }
  out << "\nalgorithms:";
  for (const auto& spec : config.algorithms) {
    out << " " << spec.name;
    if (spec.tune) out << "(tune)";
  }
  out << "\noutput: " << config.output_dir.string() << "\n";
  return out.str();
}

}  // namespace carousel::cli
