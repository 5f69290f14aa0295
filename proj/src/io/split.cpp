#include "carousel/io/split.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "carousel/core/errors.hpp"
#include "carousel/core/rng.hpp"

namespace carousel::io {

void validate(const SplitConfig& cfg) {
  const double fractions[] = {cfg.train_fraction, cfg.validation_fraction,
                              cfg.test_fraction};
  for (const double f : fractions)
    if (!(f > 0.0 && f < 1.0))
      throw ConfigError("split fractions must lie in (0, 1)");
  const double sum = cfg.train_fraction + cfg.validation_fraction + cfg.test_fraction;
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("split fractions must sum to 1");
}

core::DatasetSplit split_holdout(const core::InteractionMatrix& matrix,
                                 const SplitConfig& cfg) {
  validate(cfg);
  if (matrix.empty()) throw DataError("cannot split an empty interaction matrix");

  auto entries = matrix.to_triplets();
  core::Rng rng(cfg.seed);
  rng.shuffle(entries);

  const auto n = static_cast<std::int64_t>(entries.size());
  const auto n_val =
      static_cast<std::int64_t>(std::floor(static_cast<double>(n) * cfg.validation_fraction));
  const auto n_test =
      static_cast<std::int64_t>(std::floor(static_cast<double>(n) * cfg.test_fraction));
  const auto n_train = n - n_val - n_test;
  if (n_train <= 0 || n_val <= 0 || n_test <= 0)
    throw DataError("split produced an empty part (too few interactions)");

  const auto make = [&](std::int64_t begin, std::int64_t end) {
    std::vector<core::Triplet> part(entries.begin() + begin, entries.begin() + end);
    return core::InteractionMatrix::from_triplets(matrix.rows(), matrix.cols(),
                                                  std::move(part));
  };
  core::DatasetSplit split;
  split.train = make(0, n_train);
  split.validation = make(n_train, n_train + n_val);
  split.test = make(n_train + n_val, n);
  split.seed = cfg.seed;
  return split;
}

namespace {

void write_part(std::ofstream& out, char tag, const core::InteractionMatrix& m) {
  char buf[64];
  for (const auto& t : m.to_triplets()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.value);
    out << tag << '\t' << t.row << '\t' << t.col << '\t' << buf << '\n';
  }
}

}  // namespace

void save_split(const std::filesystem::path& path, const core::DatasetSplit& split) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << "# carousel-split v1\n";
  out << "# users " << split.train.rows() << " items " << split.train.cols() << " seed "
      << split.seed << "\n";
  write_part(out, 't', split.train);
  write_part(out, 'v', split.validation);
  write_part(out, 's', split.test);
  if (!out) throw DataError("write failure on '" + path.string() + "'");
}

core::DatasetSplit load_split(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open split file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "# carousel-split v1")
    throw DataError("'" + path.string() + "' is not a v1 split file");
  std::int32_t users = 0, items = 0;
  std::uint64_t seed = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# users %d items %d seed %llu", &users, &items,
                  reinterpret_cast<unsigned long long*>(&seed)) != 3)
    throw DataError("missing split header in '" + path.string() + "'");

  std::vector<core::Triplet> train, validation, test;
  std::int64_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    char tag = 0;
    core::Triplet t;
    if (std::sscanf(line.c_str(), "%c\t%d\t%d\t%lf", &tag, &t.row, &t.col, &t.value) != 4)
      throw DataError("corrupted split line at " + path.string() + ":" +
                      std::to_string(line_no));
    switch (tag) {
      case 't': train.push_back(t); break;
      case 'v': validation.push_back(t); break;
      case 's': test.push_back(t); break;
      default:
        throw DataError("unknown split part at " + path.string() + ":" +
                        std::to_string(line_no));
    }
  }
  core::DatasetSplit split;
  split.train = core::InteractionMatrix::from_triplets(users, items, std::move(train));
  split.validation =
      core::InteractionMatrix::from_triplets(users, items, std::move(validation));
  split.test = core::InteractionMatrix::from_triplets(users, items, std::move(test));
  split.seed = seed;
  return split;
}

void save_id_maps(const std::filesystem::path& path, const RawInteractions& raw) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << "# carousel-ids v1\n";
  for (const auto& id : raw.user_ids) out << "u\t" << id << '\n';
  for (const auto& id : raw.item_ids) out << "i\t" << id << '\n';
  if (!out) throw DataError("write failure on '" + path.string() + "'");
}

IdMaps load_id_maps(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open id map file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "# carousel-ids v1")
    throw DataError("'" + path.string() + "' is not a v1 id map file");
  IdMaps maps;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.size() < 3 || line[1] != '\t' || (line[0] != 'u' && line[0] != 'i'))
      throw DataError("corrupted id map line at " + path.string() + ":" +
                      std::to_string(line_no));
    const std::string id = line.substr(2);
    if (line[0] == 'u') {
      maps.user_index.emplace(id, static_cast<std::int32_t>(maps.user_ids.size()));
      maps.user_ids.push_back(id);
    } else {
      maps.item_index.emplace(id, static_cast<std::int32_t>(maps.item_ids.size()));
      maps.item_ids.push_back(id);
    }
  }
  return maps;
}

core::InteractionMatrix subsample_users(const core::InteractionMatrix& matrix,
                                        double keep_fraction, std::uint64_t seed) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    throw ConfigError("keep_fraction must lie in (0, 1]");
  std::vector<std::int32_t> users(static_cast<std::size_t>(matrix.rows()));
  for (std::int32_t u = 0; u < matrix.rows(); ++u) users[static_cast<std::size_t>(u)] = u;
  core::Rng rng(seed);
  rng.shuffle(users);
  const auto keep = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(static_cast<double>(matrix.rows()) * keep_fraction)));
  users.resize(static_cast<std::size_t>(keep));
  std::sort(users.begin(), users.end());

  std::vector<std::int32_t> remap(static_cast<std::size_t>(matrix.rows()), -1);
  for (std::size_t i = 0; i < users.size(); ++i)
    remap[static_cast<std::size_t>(users[i])] = static_cast<std::int32_t>(i);

  std::vector<core::Triplet> kept;
  for (const auto& t : matrix.to_triplets())
    if (remap[static_cast<std::size_t>(t.row)] >= 0)
      kept.push_back({remap[static_cast<std::size_t>(t.row)], t.col, t.value});
  if (kept.empty()) throw DataError("user subsample removed every interaction");
  return core::InteractionMatrix::from_triplets(static_cast<std::int32_t>(users.size()),
                                                matrix.cols(), std::move(kept));
}

}  // namespace carousel::io
