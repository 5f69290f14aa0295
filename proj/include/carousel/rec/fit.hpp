#pragma once

#include <cstdint>

#include "carousel/rec/models.hpp"

namespace carousel::rec {

PopularityModel fit_toppop(const core::InteractionMatrix& train);

// Cosine similarity with shrinkage over the given row vectors:
// s(a, b) = <v_a, v_b> / (|v_a| * |v_b| + shrink), a != b, kept when > 0,
// truncated to the top-k entries per row (ties by smaller index). A zero-norm
// row is similar to nothing.
core::SparseMatrix cosine_topk(const core::SparseMatrix& rows, double shrink, int k);

SimilarityModel fit_itemknn_cf(const core::InteractionMatrix& train, int k, double shrink);
SimilarityModel fit_userknn_cf(const core::InteractionMatrix& train, int k, double shrink);
SimilarityModel fit_itemknn_cbf(const core::FeatureMatrix& item_features, int k, double shrink);
SimilarityModel fit_userknn_cbf(const core::FeatureMatrix& user_features, int k, double shrink);

// Hybrids concatenate the collaborative vector with the feature vector, the
// feature block scaled by content_weight.
SimilarityModel fit_itemknn_cfcbf(const core::InteractionMatrix& train,
                                  const core::FeatureMatrix& item_features, int k,
                                  double shrink, double content_weight);
SimilarityModel fit_userknn_cfcbf(const core::InteractionMatrix& train,
                                  const core::FeatureMatrix& user_features, int k,
                                  double shrink, double content_weight);

// Random-walk similarities. P3alpha: S = P_iu * P_ui with the transition
// probabilities raised elementwise to alpha. RP3beta additionally divides
// column j by popularity(j)^beta.
SimilarityModel fit_p3alpha(const core::InteractionMatrix& train, double alpha, int k);
SimilarityModel fit_rp3beta(const core::InteractionMatrix& train, double alpha,
                            double beta, int k);

// Closed-form ridge item model: G = R^T R + lambda I, P = G^{-1},
// B = I - P diag(1/diag(P)), diag(B) forced to exactly 0.
DenseWeightModel fit_easer(const core::InteractionMatrix& train, double lambda);

struct SvdOptions {
  int oversampling = 8;
  int power_iterations = 4;
};

// Rank-f truncated SVD via seeded randomized subspace iteration.
FactorModel fit_puresvd(const core::InteractionMatrix& train, int f, std::uint64_t seed,
                        SvdOptions options = {});

// Horizontal concatenation [a | scale * b]; rows must match.
core::SparseMatrix concat_columns_scaled(const core::SparseMatrix& a,
                                         const core::SparseMatrix& b, double scale);

}  // namespace carousel::rec
