#include "carousel/rec/fit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "carousel/core/errors.hpp"
#include "carousel/core/rng.hpp"

namespace carousel::rec {

namespace {

Eigen::SparseMatrix<double> to_eigen(const core::SparseMatrix& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(m.nnz()));
  for (std::int32_t r = 0; r < m.rows(); ++r) {
    const auto cols = m.row_cols(r);
    const auto vals = m.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k)
      triplets.emplace_back(r, cols[k], vals[k]);
  }
  Eigen::SparseMatrix<double> out(m.rows(), m.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// Keep the k largest entries of a scored row, ties by smaller index, values
// must be strictly positive. Appends triplets for row `row`.
void append_topk(std::vector<core::Triplet>& out, std::int32_t row,
                 const std::vector<std::int32_t>& touched,
                 const std::vector<double>& acc, int k) {
  std::vector<std::int32_t> candidates;
  candidates.reserve(touched.size());
  for (const auto idx : touched)
    if (acc[static_cast<std::size_t>(idx)] > 0.0) candidates.push_back(idx);
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(k), candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), [&](std::int32_t a, std::int32_t b) {
                      const double va = acc[static_cast<std::size_t>(a)];
                      const double vb = acc[static_cast<std::size_t>(b)];
                      if (va != vb) return va > vb;
                      return a < b;
                    });
  for (std::size_t i = 0; i < keep; ++i)
    out.push_back({row, candidates[i], acc[static_cast<std::size_t>(candidates[i])]});
}

}  // namespace

PopularityModel fit_toppop(const core::InteractionMatrix& train) {
  if (train.empty()) throw std::invalid_argument("toppop needs a non-empty training matrix");
  return PopularityModel{train.col_counts()};
}

core::SparseMatrix cosine_topk(const core::SparseMatrix& rows, double shrink, int k) {
  if (rows.empty()) throw std::invalid_argument("cosine_topk needs non-empty rows");
  if (shrink < 0.0) throw std::invalid_argument("shrink must be >= 0");
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  const std::int32_t n = rows.rows();
  std::vector<double> norms(static_cast<std::size_t>(n), 0.0);
  for (std::int32_t r = 0; r < n; ++r) {
    double sq = 0.0;
    for (const double v : rows.row_values(r)) sq += v * v;
    norms[static_cast<std::size_t>(r)] = std::sqrt(sq);
  }

  const core::SparseMatrix by_dim = rows.transposed();
  std::vector<core::Triplet> triplets;
  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> touched;
  for (std::int32_t a = 0; a < n; ++a) {
    touched.clear();
    const auto dims = rows.row_cols(a);
    const auto vals = rows.row_values(a);
    for (std::size_t d = 0; d < dims.size(); ++d) {
      const auto other_rows = by_dim.row_cols(dims[d]);
      const auto other_vals = by_dim.row_values(dims[d]);
      for (std::size_t t = 0; t < other_rows.size(); ++t) {
        const std::int32_t b = other_rows[t];
        if (b == a) continue;
        if (!seen[static_cast<std::size_t>(b)]) {
          seen[static_cast<std::size_t>(b)] = 1;
          touched.push_back(b);
        }
        acc[static_cast<std::size_t>(b)] += vals[d] * other_vals[t];
      }
    }
    for (const auto b : touched) {
      const double denom =
          norms[static_cast<std::size_t>(a)] * norms[static_cast<std::size_t>(b)] + shrink;
      acc[static_cast<std::size_t>(b)] =
          denom > 0.0 ? acc[static_cast<std::size_t>(b)] / denom : 0.0;
    }
    append_topk(triplets, a, touched, acc, k);
    for (const auto b : touched) {
      acc[static_cast<std::size_t>(b)] = 0.0;
      seen[static_cast<std::size_t>(b)] = 0;
    }
  }
  return core::SparseMatrix::from_triplets(n, n, std::move(triplets));
}

SimilarityModel fit_itemknn_cf(const core::InteractionMatrix& train, int k, double shrink) {
  return {cosine_topk(train.transposed(), shrink, k), Orientation::ItemBased};
}

SimilarityModel fit_userknn_cf(const core::InteractionMatrix& train, int k, double shrink) {
  return {cosine_topk(train, shrink, k), Orientation::UserBased};
}

SimilarityModel fit_itemknn_cbf(const core::FeatureMatrix& item_features, int k, double shrink) {
  return {cosine_topk(item_features, shrink, k), Orientation::ItemBased};
}

SimilarityModel fit_userknn_cbf(const core::FeatureMatrix& user_features, int k, double shrink) {
  return {cosine_topk(user_features, shrink, k), Orientation::UserBased};
}

core::SparseMatrix concat_columns_scaled(const core::SparseMatrix& a,
                                         const core::SparseMatrix& b, double scale) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("concat_columns_scaled: row counts differ");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be >= 0");
  std::vector<core::Triplet> triplets = a.to_triplets();
  if (scale > 0.0) {
    for (auto& t : b.to_triplets()) {
      t.col += a.cols();
      t.value *= scale;
      triplets.push_back(t);
    }
  }
  return core::SparseMatrix::from_triplets(a.rows(), a.cols() + b.cols(), std::move(triplets));
}

SimilarityModel fit_itemknn_cfcbf(const core::InteractionMatrix& train,
                                  const core::FeatureMatrix& item_features, int k,
                                  double shrink, double content_weight) {
  const auto rows = concat_columns_scaled(train.transposed(), item_features, content_weight);
  return {cosine_topk(rows, shrink, k), Orientation::ItemBased};
}

SimilarityModel fit_userknn_cfcbf(const core::InteractionMatrix& train,
                                  const core::FeatureMatrix& user_features, int k,
                                  double shrink, double content_weight) {
  const auto rows = concat_columns_scaled(train, user_features, content_weight);
  return {cosine_topk(rows, shrink, k), Orientation::UserBased};
}

namespace {

SimilarityModel fit_p3_family(const core::InteractionMatrix& train, double alpha,
                              double beta, int k) {
  if (train.empty()) throw std::invalid_argument("graph model needs a non-empty matrix");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  const std::int32_t num_items = train.cols();
  const auto user_sums = train.row_sums();
  const auto item_sums = train.col_sums();
  const core::SparseMatrix item_user = train.transposed();

  // Elementwise alpha powers of the row-normalized transition probabilities,
  // stored parallel to the CSR values.
  std::vector<double> p_ui;
  p_ui.reserve(static_cast<std::size_t>(train.nnz()));
  for (std::int32_t u = 0; u < train.rows(); ++u)
    for (const double v : train.row_values(u))
      p_ui.push_back(std::pow(v / user_sums[static_cast<std::size_t>(u)], alpha));

  std::vector<double> col_scale(static_cast<std::size_t>(num_items), 1.0);
  if (beta > 0.0) {
    const auto popularity = train.col_counts();
    for (std::int32_t i = 0; i < num_items; ++i) {
      const auto pop = popularity[static_cast<std::size_t>(i)];
      col_scale[static_cast<std::size_t>(i)] =
          pop > 0 ? std::pow(static_cast<double>(pop), -beta) : 0.0;
    }
  }

  std::vector<std::int64_t> user_offset(static_cast<std::size_t>(train.rows()) + 1, 0);
  for (std::int32_t u = 0; u < train.rows(); ++u)
    user_offset[static_cast<std::size_t>(u) + 1] =
        user_offset[static_cast<std::size_t>(u)] + train.row_nnz(u);

  std::vector<core::Triplet> triplets;
  std::vector<double> acc(static_cast<std::size_t>(num_items), 0.0);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(num_items), 0);
  std::vector<std::int32_t> touched;
  for (std::int32_t i = 0; i < num_items; ++i) {
    touched.clear();
    const auto users = item_user.row_cols(i);
    const auto vals = item_user.row_values(i);
    for (std::size_t t = 0; t < users.size(); ++t) {
      const std::int32_t u = users[t];
      const double p_iu = std::pow(vals[t] / item_sums[static_cast<std::size_t>(i)], alpha);
      const auto row_items = train.row_cols(u);
      const auto base = static_cast<std::size_t>(user_offset[static_cast<std::size_t>(u)]);
      for (std::size_t s = 0; s < row_items.size(); ++s) {
        const std::int32_t j = row_items[s];
        if (j == i) continue;
        if (!seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          touched.push_back(j);
        }
        acc[static_cast<std::size_t>(j)] += p_iu * p_ui[base + s];
      }
    }
    if (beta > 0.0)
      for (const auto j : touched)
        acc[static_cast<std::size_t>(j)] *= col_scale[static_cast<std::size_t>(j)];
    append_topk(triplets, i, touched, acc, k);
    for (const auto j : touched) {
      acc[static_cast<std::size_t>(j)] = 0.0;
      seen[static_cast<std::size_t>(j)] = 0;
    }
  }
  return {core::SparseMatrix::from_triplets(num_items, num_items, std::move(triplets)),
          Orientation::ItemBased};
}

}  // namespace

SimilarityModel fit_p3alpha(const core::InteractionMatrix& train, double alpha, int k) {
  return fit_p3_family(train, alpha, 0.0, k);
}

SimilarityModel fit_rp3beta(const core::InteractionMatrix& train, double alpha,
                            double beta, int k) {
  return fit_p3_family(train, alpha, beta, k);
}

DenseWeightModel fit_easer(const core::InteractionMatrix& train, double lambda) {
  if (train.empty()) throw std::invalid_argument("ease needs a non-empty matrix");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const std::int32_t n = train.cols();

  const Eigen::SparseMatrix<double> r = to_eigen(train);
  Eigen::MatrixXd gram = Eigen::MatrixXd(Eigen::SparseMatrix<double>(r.transpose() * r));
  gram.diagonal().array() += lambda;

  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw ComputeError("ease: Gram matrix numerically singular (lambda too small)");
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));

  DenseWeightModel model;
  model.weights = Eigen::MatrixXd(n, n);
  for (std::int32_t j = 0; j < n; ++j) {
    const double pivot = inv(j, j);
    if (!(pivot > 0.0))
      throw ComputeError("ease: non-positive diagonal in the inverse Gram matrix");
    model.weights.col(j) = -inv.col(j) / pivot;
    model.weights(j, j) = 0.0;
  }
  if (!model.weights.allFinite())
    throw ComputeError("ease: non-finite weights");
  return model;
}

FactorModel fit_puresvd(const core::InteractionMatrix& train, int f, std::uint64_t seed,
                        SvdOptions options) {
  if (train.empty()) throw std::invalid_argument("puresvd needs a non-empty matrix");
  const std::int32_t min_dim = std::min(train.rows(), train.cols());
  if (f < 1 || f > min_dim)
    throw std::invalid_argument("factor count must be in [1, min(num_users, num_items)]");

  const int r = std::min(f + std::max(options.oversampling, 0), static_cast<int>(min_dim));
  const Eigen::SparseMatrix<double> a = to_eigen(train);

  core::Rng rng(seed);
  Eigen::MatrixXd omega(train.cols(), r);
  for (std::int32_t i = 0; i < train.cols(); ++i)
    for (int j = 0; j < r; ++j) omega(i, j) = rng.gaussian();

  const auto thin_q = [](const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return Eigen::MatrixXd(qr.householderQ() *
                           Eigen::MatrixXd::Identity(m.rows(), std::min(m.rows(), m.cols())));
  };

  Eigen::MatrixXd q = thin_q(a * omega);
  for (int it = 0; it < options.power_iterations; ++it) {
    const Eigen::MatrixXd z = thin_q(a.transpose() * q);
    q = thin_q(a * z);
  }

  const Eigen::MatrixXd small = (a.transpose() * q).transpose();  // r x num_items
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(small,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);

  FactorModel model;
  model.user_factors = (q * svd.matrixU()).leftCols(f);
  model.item_factors = svd.matrixV().leftCols(f);
  model.singular_values = svd.singularValues().head(f);
  if (!model.user_factors.allFinite() || !model.item_factors.allFinite() ||
      !model.singular_values.allFinite())
    throw ComputeError("puresvd: randomized iteration did not converge");
  return model;
}

}  // namespace carousel::rec
