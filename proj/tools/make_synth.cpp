// Deterministic synthetic movie-style dataset generator for demos and the
// end-to-end smoke test. Writes ratings.csv, movies.csv and users.csv in the
// project's csv layouts.

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <vector>

#include "carousel/core/rng.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kNumGenres = 8;
const char* kGenres[kNumGenres] = {"Action",  "Comedy",  "Drama",  "Horror",
                                   "Romance", "Sci-Fi",  "Thriller", "Documentary"};

struct Options {
  std::string out_dir = "data";
  int users = 2000;
  int items = 500;
  std::uint64_t seed = 7;
  double interactions_per_user = 40.0;
};

int run(const Options& opt) {
  carousel::core::Rng rng(opt.seed);
  fs::create_directories(opt.out_dir);

  // Items: 1-3 genres, a release decade, Zipf-like base popularity.
  std::vector<std::vector<int>> item_genres(static_cast<std::size_t>(opt.items));
  std::vector<int> item_year(static_cast<std::size_t>(opt.items));
  std::vector<double> item_pop(static_cast<std::size_t>(opt.items));
  for (int i = 0; i < opt.items; ++i) {
    const auto n_genres = static_cast<int>(rng.uniform_int(1, 3));
    std::set<int> genres;
    while (static_cast<int>(genres.size()) < n_genres)
      genres.insert(static_cast<int>(rng.uniform_int(0, kNumGenres - 1)));
    item_genres[static_cast<std::size_t>(i)].assign(genres.begin(), genres.end());
    item_year[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(1950, 2019));
    item_pop[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -0.8);
  }

  // Users: genre taste vectors.
  std::vector<std::array<double, kNumGenres>> taste(static_cast<std::size_t>(opt.users));
  std::vector<int> favorite(static_cast<std::size_t>(opt.users));
  for (int u = 0; u < opt.users; ++u) {
    double best = -1e9;
    for (int g = 0; g < kNumGenres; ++g) {
      const double t = rng.gaussian();
      taste[static_cast<std::size_t>(u)][static_cast<std::size_t>(g)] = t;
      if (t > best) {
        best = t;
        favorite[static_cast<std::size_t>(u)] = g;
      }
    }
  }

  const auto affinity = [&](int u, int i) {
    double sum = 0.0;
    for (const int g : item_genres[static_cast<std::size_t>(i)])
      sum += taste[static_cast<std::size_t>(u)][static_cast<std::size_t>(g)];
    return sum / static_cast<double>(item_genres[static_cast<std::size_t>(i)].size());
  };

  std::ofstream ratings(fs::path(opt.out_dir) / "ratings.csv");
  ratings << "user,item,rating\n";
  std::int64_t written = 0;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(opt.items));
  for (int u = 0; u < opt.users; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    const auto target = std::max<std::int64_t>(
        15, static_cast<std::int64_t>(opt.interactions_per_user *
                                      std::exp(0.5 * rng.gaussian())));
    std::int64_t kept = 0;
    for (std::int64_t attempt = 0; attempt < target * 4 && kept < target; ++attempt) {
      // Popularity-weighted item draw via rejection.
      const auto i = static_cast<int>(rng.uniform_int(0, opt.items - 1));
      if (seen[static_cast<std::size_t>(i)]) continue;
      const double accept =
          item_pop[static_cast<std::size_t>(i)] / item_pop[0] * 0.7 +
          0.3 * (affinity(u, i) > 0.0 ? 1.0 : 0.15);
      if (rng.uniform01() > accept) continue;
      seen[static_cast<std::size_t>(i)] = 1;
      double r = 3.0 + 1.2 * affinity(u, i) + 0.6 * rng.gaussian();
      r = std::clamp(std::round(r * 2.0) / 2.0, 0.5, 5.0);
      ratings << u << ',' << i << ',' << r << '\n';
      ++kept;
      ++written;
    }
  }

  std::ofstream movies(fs::path(opt.out_dir) / "movies.csv");
  movies << "item,title,genres\n";
  for (int i = 0; i < opt.items; ++i) {
    movies << i << ",Item " << i << " (" << item_year[static_cast<std::size_t>(i)] << "),";
    const auto& genres = item_genres[static_cast<std::size_t>(i)];
    for (std::size_t g = 0; g < genres.size(); ++g)
      movies << (g ? "|" : "") << kGenres[genres[g]];
    movies << '\n';
  }

  std::ofstream users(fs::path(opt.out_dir) / "users.csv");
  users << "user,features\n";
  for (int u = 0; u < opt.users; ++u)
    users << u << ',' << kGenres[favorite[static_cast<std::size_t>(u)]] << '\n';

  std::cout << "synthetic dataset: " << opt.users << " users, " << opt.items
            << " items, " << written << " ratings in " << opt.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic synthetic dataset generator"};
  Options opt;
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--users", opt.users, "number of users");
  app.add_option("--items", opt.items, "number of items");
  app.add_option("--seed", opt.seed, "generator seed");
  app.add_option("--per-user", opt.interactions_per_user, "mean interactions per user");
  CLI11_PARSE(app, argc, argv);
  return run(opt);
}
