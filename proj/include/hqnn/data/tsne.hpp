// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hqnn/data/table.hpp"

namespace hqnn::data {

struct TsneConfig {
    int components = 2; ///< output dimensionality (fixed at 2 in this toolkit)
    std::uint64_t seed = 42;
    int iterations = 500;
    double learning_rate = 0.0; ///< <= 0 selects max(1, N/12) automatically
    double perplexity_cap = 30.0; ///< effective perplexity = min(cap, N/4)
    double momentum_early = 0.5;
    double momentum_late = 0.8;
    int momentum_switch = 250;
};

struct TsneResult {
    Matrix embedding; ///< N x 2
    std::vector<int> dataset_of_row;
    std::vector<std::array<double, 2>> centroids;
    Matrix centroid_distances; ///< k x k, symmetric, zero diagonal
    double perplexity = 0.0;
    std::vector<double> row_perplexity; ///< calibrated per-point perplexities
    double spread = 0.0;                ///< rms radius of the embedding
};

/// Exact (all-pairs) t-SNE over the tables' shared feature columns, jointly
/// min-max scaled. Gaussian affinities are calibrated per point by binary
/// search on the bandwidth until the induced perplexity matches
/// min(cap, N/4); the embedding minimizes KL divergence to the Student-t
/// kernel by momentum gradient descent. Dataset similarity is summarized by
/// pairwise centroid distances in the embedding.
///
/// Initial coordinates are a seeded hash of each row's scaled feature bytes,
/// so identical rows embed identically and duplicated datasets land at
/// centroid distance zero regardless of row order.
///
/// ValidationError when fewer than two tables are given, no feature columns
/// are shared, or any table has fewer than four rows.
TsneResult tsne_compare(const std::vector<RawTable>& tables, const TsneConfig& config = {});

} // namespace hqnn::data
