#include <CLI11.hpp>
#include <iostream>

#include "carousel/cli/pipeline.hpp"
#include "carousel/core/errors.hpp"

namespace {

// Exit codes: 0 success, 2 configuration errors, 3 data errors, 4 runtime
// failures.
constexpr int kConfigExit = 2;
constexpr int kDataExit = 3;
constexpr int kRuntimeExit = 4;

struct CommonArgs {
  std::string config_path;
  carousel::cli::CliOverrides overrides;
  bool dry_run = false;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "run configuration JSON")->required();
  auto& o = args.overrides;
  cmd->add_option("--seed", [&o](const CLI::results_t& r) {
    o.seed = std::stoull(r.front());
    return true;
  }, "override the split seed");
  cmd->add_option("--alpha", [&o](const CLI::results_t& r) {
    o.alpha = std::stod(r.front());
    return true;
  }, "row discount weight (>= 1)");
  cmd->add_option("--beta", [&o](const CLI::results_t& r) {
    o.beta = std::stod(r.front());
    return true;
  }, "column discount weight (>= 1)");
  cmd->add_option("--cutoff", [&o](const CLI::results_t& r) {
    o.cutoff = std::stoi(r.front());
    return true;
  }, "recommendation list length");
  cmd->add_option("--threads", [&o](const CLI::results_t& r) {
    o.threads = std::stoi(r.front());
    return true;
  }, "worker threads (0 = auto)");
  cmd->add_option("--fixed", [&o](const CLI::results_t& r) {
    o.fixed = r.front();
    return true;
  }, "fixed carousel: provider name(s) or a grid file path");
  cmd->add_option("--out", [&o](const CLI::results_t& r) {
    o.output_dir = r.front();
    return true;
  }, "output directory");
  cmd->add_flag("--dry-run", args.dry_run, "validate the config and print the plan");
}

carousel::cli::RunConfig load(const CommonArgs& args) {
  auto config = carousel::cli::load_run_config(args.config_path);
  carousel::cli::apply_overrides(config, args.overrides);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline evaluation of recommenders in multi-carousel interfaces"};
  app.require_subcommand(1);

  CommonArgs prepare_args, tune_args, run_args, report_args;
  auto* prepare = app.add_subcommand("prepare", "parse, implicitize and split the dataset");
  add_common_flags(prepare, prepare_args);
  auto* tune = app.add_subcommand("tune", "random-search hyperparameters on validation MAP");
  add_common_flags(tune, tune_args);
  auto* run = app.add_subcommand("run", "train algorithms and emit the evaluation report");
  add_common_flags(run, run_args);
  auto* report = app.add_subcommand("report", "re-render results.md from results.csv");
  add_common_flags(report, report_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (prepare->parsed()) {
      const auto config = load(prepare_args);
      if (prepare_args.dry_run) {
        std::cout << carousel::cli::describe_plan(config);
        return 0;
      }
      carousel::cli::cmd_prepare(config, std::cout);
    } else if (tune->parsed()) {
      const auto config = load(tune_args);
      if (tune_args.dry_run) {
        std::cout << carousel::cli::describe_plan(config);
        return 0;
      }
      carousel::cli::cmd_tune(config, std::cout);
    } else if (run->parsed()) {
      const auto config = load(run_args);
      if (run_args.dry_run) {
        std::cout << carousel::cli::describe_plan(config);
        return 0;
      }
      carousel::cli::cmd_run(config, std::cout);
    } else if (report->parsed()) {
      const auto config = load(report_args);
      if (report_args.dry_run) {
        std::cout << carousel::cli::describe_plan(config);
        return 0;
      }
      carousel::cli::cmd_report(config, std::cout);
    }
  } catch (const carousel::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const carousel::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeExit;
  }
  return 0;
}
