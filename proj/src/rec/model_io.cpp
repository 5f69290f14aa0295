#include "carousel/rec/model_io.hpp"

#include <cstring>
#include <fstream>

#include "carousel/core/errors.hpp"

namespace carousel::rec {

namespace {

constexpr char kMagic[4] = {'C', 'R', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;

enum class Family : std::uint8_t {
  Popularity = 0,
  Similarity = 1,
  DenseWeight = 2,
  Factor = 3,
};

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw DataError("cannot open '" + path.string() + "' for writing");
  }

  void u8(std::uint8_t v) { put(&v, 1); }
  void u32(std::uint32_t v) { put_le(v); }
  void u64(std::uint64_t v) { put_le(v); }
  void i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v)); }
  void f64(double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    put_le(bits);
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    put(s.data(), s.size());
  }
  void raw(const void* data, std::size_t n) { put(data, n); }

 private:
  template <typename T>
  void put_le(T v) {
    std::uint8_t buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
      buf[i] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xff);
    put(buf, sizeof(T));
  }
  void put(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!out_) throw DataError("write failure");
  }

  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path)
      : in_(path, std::ios::binary), path_(path.string()) {
    if (!in_) throw DataError("cannot open model file '" + path_ + "'");
  }

  std::uint8_t u8() {
    std::uint8_t v = 0;
    get(&v, 1);
    return v;
  }
  std::uint32_t u32() { return get_le<std::uint32_t>(); }
  std::uint64_t u64() { return get_le<std::uint64_t>(); }
  std::int64_t i64() { return static_cast<std::int64_t>(get_le<std::uint64_t>()); }
  double f64() {
    const std::uint64_t bits = get_le<std::uint64_t>();
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str() {
    const auto len = u32();
    std::string s(len, '\0');
    get(s.data(), len);
    return s;
  }

 private:
  template <typename T>
  T get_le() {
    std::uint8_t buf[sizeof(T)];
    get(buf, sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
  }
  void get(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n))
      throw DataError("truncated model file '" + path_ + "'");
  }

  std::ifstream in_;
  std::string path_;
};

void write_matrix(Writer& w, const Eigen::MatrixXd& m) {
  w.u32(static_cast<std::uint32_t>(m.rows()));
  w.u32(static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) w.f64(m(r, c));
}

Eigen::MatrixXd read_matrix(Reader& r) {
  const auto rows = r.u32();
  const auto cols = r.u32();
  Eigen::MatrixXd m(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) m(i, j) = r.f64();
  return m;
}

void write_sparse(Writer& w, const core::SparseMatrix& m) {
  w.u32(static_cast<std::uint32_t>(m.rows()));
  w.u32(static_cast<std::uint32_t>(m.cols()));
  w.u64(static_cast<std::uint64_t>(m.nnz()));
  for (const auto& t : m.to_triplets()) {
    w.u32(static_cast<std::uint32_t>(t.row));
    w.u32(static_cast<std::uint32_t>(t.col));
    w.f64(t.value);
  }
}

core::SparseMatrix read_sparse(Reader& r) {
  const auto rows = r.u32();
  const auto cols = r.u32();
  const auto nnz = r.u64();
  std::vector<core::Triplet> triplets;
  triplets.reserve(nnz);
  for (std::uint64_t k = 0; k < nnz; ++k) {
    core::Triplet t;
    t.row = static_cast<std::int32_t>(r.u32());
    t.col = static_cast<std::int32_t>(r.u32());
    t.value = r.f64();
    triplets.push_back(t);
  }
  return core::SparseMatrix::from_triplets(static_cast<std::int32_t>(rows),
                                           static_cast<std::int32_t>(cols),
                                           std::move(triplets));
}

}  // namespace

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  Writer w(path);
  w.raw(kMagic, 4);
  w.u32(kVersion);
  w.str(model.tag);
  w.u8(model.exclude_seen ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(model.params.values.size()));
  for (const auto& [key, value] : model.params.values) {
    w.str(key);
    w.f64(value);
  }
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, PopularityModel>) {
          w.u8(static_cast<std::uint8_t>(Family::Popularity));
          w.u64(m.popularity.size());
          for (const auto c : m.popularity) w.i64(c);
        } else if constexpr (std::is_same_v<M, SimilarityModel>) {
          w.u8(static_cast<std::uint8_t>(Family::Similarity));
          w.u8(static_cast<std::uint8_t>(m.orientation));
          write_sparse(w, m.similarity);
        } else if constexpr (std::is_same_v<M, DenseWeightModel>) {
          w.u8(static_cast<std::uint8_t>(Family::DenseWeight));
          write_matrix(w, m.weights);
        } else {
          w.u8(static_cast<std::uint8_t>(Family::Factor));
          write_matrix(w, m.user_factors);
          write_matrix(w, m.item_factors);
          w.u32(static_cast<std::uint32_t>(m.singular_values.size()));
          for (Eigen::Index i = 0; i < m.singular_values.size(); ++i)
            w.f64(m.singular_values(i));
        }
      },
      model.model);
}

TrainedModel load_model(const std::filesystem::path& path) {
  Reader r(path);
  char magic[4];
  for (auto& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("not a model container: '" + path.string() + "'");
  const auto version = r.u32();
  if (version != kVersion)
    throw DataError("unsupported model container version " + std::to_string(version));

  TrainedModel model;
  model.tag = r.str();
  model.exclude_seen = r.u8() != 0;
  const auto n_params = r.u32();
  for (std::uint32_t i = 0; i < n_params; ++i) {
    const auto key = r.str();
    model.params.set(key, r.f64());
  }
  const auto family = static_cast<Family>(r.u8());
  switch (family) {
    case Family::Popularity: {
      PopularityModel m;
      const auto n = r.u64();
      m.popularity.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) m.popularity.push_back(r.i64());
      model.model = std::move(m);
      break;
    }
    case Family::Similarity: {
      SimilarityModel m;
      m.orientation = static_cast<Orientation>(r.u8());
      m.similarity = read_sparse(r);
      model.model = std::move(m);
      break;
    }
    case Family::DenseWeight: {
      DenseWeightModel m;
      m.weights = read_matrix(r);
      model.model = std::move(m);
      break;
    }
    case Family::Factor: {
      FactorModel m;
      m.user_factors = read_matrix(r);
      m.item_factors = read_matrix(r);
      const auto f = r.u32();
      m.singular_values.resize(f);
      for (std::uint32_t i = 0; i < f; ++i) m.singular_values(i) = r.f64();
      model.model = std::move(m);
      break;
    }
    default:
      throw DataError("unknown model family in '" + path.string() + "'");
  }
  return model;
}

}  // namespace carousel::rec
