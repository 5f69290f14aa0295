#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "carousel/cli/pipeline.hpp"
#include "carousel/core/errors.hpp"
#include "carousel/experiment/report.hpp"

using namespace carousel;
using namespace carousel::cli;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "carousel-cli-tests") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path file(const std::string& name) const { return path / name; }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Small deterministic csv dataset: 24 users x 12 items.
void write_dataset(const TempDir& dir) {
  std::ostringstream ratings;
  ratings << "user,item,rating\n";
  for (int u = 0; u < 24; ++u)
    for (int i = 0; i < 12; ++i)
      if ((u * 7 + i * 3) % 5 != 0)
        ratings << "u" << u << ",i" << i << "," << (1 + (u + i) % 5) << "\n";
  write_file(dir.file("ratings.csv"), ratings.str());

  std::ostringstream movies;
  movies << "item,title,genres\n";
  for (int i = 0; i < 12; ++i)
    movies << "i" << i << ",Item " << i << " (19" << 50 + i << "),"
           << (i % 2 == 0 ? "Action" : "Drama") << "\n";
  write_file(dir.file("movies.csv"), movies.str());
}

std::string config_json(const TempDir& dir, const std::string& extra_algorithms = "") {
  std::ostringstream json;
  json << R"({
  "dataset": {
    "interactions": ")" << (dir.path / "ratings.csv").string() << R"(",
    "format": "csv",
    "item_features": ")" << (dir.path / "movies.csv").string() << R"("
  },
  "preprocessing": { "implicit_threshold": 2.0 },
  "split": { "train_fraction": 0.8, "validation_fraction": 0.1, "test_fraction": 0.1, "seed": 7 },
  "evaluation": { "cutoff": 5, "alpha": 1.0, "beta": 1.0, "threads": 1 },
  "fixed_carousel": { "providers": ["toppop"] },
  "algorithms": [
    { "name": "toppop" },
    { "name": "itemknn-cf", "params": { "k": 6, "shrink": 1.0 } })"
       << extra_algorithms << R"(
  ],
  "tuning": { "budget": 3, "seed": 2 },
  "output_dir": ")" << (dir.path / "out").string() << R"("
})";
  return json.str();
}

}  // namespace

TEST_CASE("run config parsing and validation") {
  TempDir dir;
  write_dataset(dir);
  write_file(dir.file("config.json"), config_json(dir));
  const auto config = load_run_config(dir.file("config.json"));
  CHECK(config.format == io::FileFormat::Csv);
  CHECK(config.implicit_threshold == 2.0);
  CHECK(config.split.seed == 7);
  CHECK(config.cutoff == 5);
  CHECK(config.fixed_providers == std::vector<std::string>{"toppop"});
  REQUIRE(config.algorithms.size() == 2);
  CHECK(config.algorithms[1].params.get_int_or("k", 0) == 6);

  SUBCASE("unknown keys are rejected everywhere") {
    write_file(dir.file("bad1.json"), R"({"dataset": {"interactions": "x", "format": "csv"}, "surprise": 1})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad1.json")), ConfigError);
    write_file(dir.file("bad2.json"),
               R"({"dataset": {"interactions": "x", "format": "csv", "oops": 2}})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad2.json")), ConfigError);
    write_file(dir.file("bad3.json"),
               R"({"dataset": {"interactions": "x", "format": "csv"},
                   "algorithms": [{"name": "toppop", "wat": true}]})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad3.json")), ConfigError);
  }

  SUBCASE("module preconditions are enforced at load time") {
    write_file(dir.file("bad4.json"), R"({"dataset": {"interactions": "x"}})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad4.json")), ConfigError);
    write_file(dir.file("bad5.json"),
               R"({"dataset": {"interactions": "x", "format": "csv"},
                   "split": {"train_fraction": 0.9}})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad5.json")), ConfigError);
    write_file(dir.file("bad6.json"),
               R"({"dataset": {"interactions": "x", "format": "csv"},
                   "evaluation": {"alpha": 0.5}})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad6.json")), ConfigError);
    write_file(dir.file("bad7.json"),
               R"({"dataset": {"interactions": "x", "format": "csv"},
                   "algorithms": [{"name": "psychic"}]})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad7.json")), ConfigError);
    write_file(dir.file("bad8.json"),
               R"({"dataset": {"interactions": "x", "format": "nope"}})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad8.json")), ConfigError);
    write_file(dir.file("bad9.json"),
               R"({"dataset": {"interactions": "x", "format": "csv"},
                   "fixed_carousel": {"providers": ["toppop"], "grid": "g.grid"}})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad9.json")), ConfigError);
    write_file(dir.file("bad10.json"),
               R"({"dataset": {"interactions": "x", "format": "csv"},
                   "algorithms": [{"name": "ease", "tune": {"lambda": [10, 1]}}]})");
    CHECK_THROWS_AS(load_run_config(dir.file("bad10.json")), ConfigError);
  }

  SUBCASE("overrides") {
    auto overridden = config;
    CliOverrides overrides;
    overrides.seed = 99;
    overrides.alpha = 2.0;
    overrides.cutoff = 7;
    overrides.fixed = std::string("itemknn-cf");
    apply_overrides(overridden, overrides);
    CHECK(overridden.split.seed == 99);
    CHECK(overridden.weights.alpha == 2.0);
    CHECK(overridden.cutoff == 7);
    CHECK(overridden.fixed_providers == std::vector<std::string>{"itemknn-cf"});

    CliOverrides grid_override;
    grid_override.fixed = std::string("/some/pages.grid");
    apply_overrides(overridden, grid_override);
    CHECK(overridden.fixed_providers.empty());
    REQUIRE(overridden.fixed_grid.has_value());
    CHECK(overridden.fixed_grid->string() == "/some/pages.grid");

    CliOverrides bad;
    bad.alpha = 0.2;
    CHECK_THROWS_AS(apply_overrides(overridden, bad), ConfigError);
  }

  SUBCASE("plan description") {
    const auto plan = describe_plan(config);
    CHECK(plan.find("ratings.csv") != std::string::npos);
    CHECK(plan.find("toppop") != std::string::npos);
    CHECK(plan.find("itemknn-cf") != std::string::npos);
    CHECK(plan.find("cutoff 5") != std::string::npos);
  }
}

TEST_CASE("prepare, tune, run and report pipeline") {
  TempDir dir;
  write_dataset(dir);
  write_file(dir.file("config.json"),
             config_json(dir, R"(,
    { "name": "p3alpha", "tune": { "k": [2, 8], "alpha": [0.5, 1.5] } },
    { "name": "itemknn-cbf", "params": { "k": 4, "shrink": 0.5 } })"));
  const auto config = load_run_config(dir.file("config.json"));

  std::ostringstream log;
  const auto stats = cmd_prepare(config, log);
  CHECK(stats.users == 24);
  CHECK(stats.items == 12);
  CHECK(stats.kept == stats.train + stats.validation + stats.test);
  CHECK(fs::exists(dir.file("out") / "split.tsv"));
  CHECK(fs::exists(dir.file("out") / "ids.tsv"));
  CHECK(log.str().find("prepared:") != std::string::npos);

  cmd_tune(config, log);
  CHECK(fs::exists(dir.file("out") / "tuned" / "p3alpha.json"));
  CHECK(fs::exists(dir.file("out") / "tuned" / "p3alpha_trials.tsv"));
  // Only algorithms with tune ranges are searched.
  CHECK_FALSE(fs::exists(dir.file("out") / "tuned" / "itemknn-cf.json"));

  cmd_run(config, log);
  const auto csv_path = dir.file("out") / "results.csv";
  const auto md_path = dir.file("out") / "results.md";
  REQUIRE(fs::exists(csv_path));
  REQUIRE(fs::exists(md_path));

  const auto table = experiment::read_results_csv(csv_path);
  CHECK(table.fixed_label == "TopPop");
  REQUIRE(table.rows.size() == 4);
  std::set<int> ranks;
  for (const auto& row : table.rows) {
    CHECK_FALSE(row.failed);
    ranks.insert(row.rank_individual);
    // The emitted improvement satisfies the single-baseline identity.
    CHECK(row.improvement_carousel ==
          experiment::improvement(row.carousel.average_precision,
                                  table.baseline.average_precision));
  }
  CHECK(ranks == std::set<int>{1, 2, 3, 4});

  // `report` re-renders the markdown byte-identically from the CSV.
  std::string original_md;
  {
    std::ifstream in(md_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    original_md = buffer.str();
  }
  fs::remove(md_path);
  cmd_report(config, log);
  std::string rendered_md;
  {
    std::ifstream in(md_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    rendered_md = buffer.str();
  }
  CHECK(rendered_md == original_md);

  // Rerun is byte-identical on the CSV.
  std::string csv_a;
  {
    std::ifstream in(csv_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    csv_a = buffer.str();
  }
  cmd_run(config, log);
  std::string csv_b;
  {
    std::ifstream in(csv_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    csv_b = buffer.str();
  }
  CHECK(csv_a == csv_b);

  // Missing split is a data error mentioning prepare.
  auto other = config;
  other.output_dir = dir.file("elsewhere");
  CHECK_THROWS_WITH_AS(cmd_run(other, log), doctest::Contains("prepare"), DataError);

  // A failing algorithm leaves a gap row instead of aborting.
  auto with_broken = config;
  AlgorithmSpec broken;
  broken.name = "userknn-cbf";  // no user features configured
  with_broken.algorithms.push_back(broken);
  cmd_run(with_broken, log);
  const auto table2 = experiment::read_results_csv(csv_path);
  REQUIRE(table2.rows.size() == 5);
  CHECK(table2.rows[4].failed);
  std::set<int> ranks2;
  for (const auto& row : table2.rows)
    if (!row.failed) ranks2.insert(row.rank_individual);
  CHECK(ranks2 == std::set<int>{1, 2, 3, 4});
}

TEST_CASE("run uses a grid file as the fixed carousel") {
  TempDir dir;
  write_dataset(dir);
  write_file(dir.file("config.json"), config_json(dir));
  auto config = load_run_config(dir.file("config.json"));
  std::ostringstream log;
  cmd_prepare(config, log);

  // Fixed pages: every user gets the same two rows.
  io::GridFile grid;
  grid.cutoff = 5;
  for (std::int32_t u = 0; u < 24; ++u)
    grid.pages.emplace(u, core::CarouselPage::build(
                              {{{0, 1, 2, 3, 4}, "editorial"}, {{5, 6, 7}, "staff"}}));
  io::save_grid(dir.file("fixed.grid"), grid);

  config.fixed_providers.clear();
  config.fixed_grid = dir.file("fixed.grid");
  cmd_run(config, log);
  const auto table = experiment::read_results_csv(dir.file("out") / "results.csv");
  CHECK(table.fixed_label.find("grid:") == 0);
  CHECK(table.rows.size() == 2);
  CHECK(table.baseline.average_precision > 0.0);
}
