// SPDX-License-Identifier: Apache-2.0
#include "hqnn/data/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>
#include <string>

#include "hqnn/data/preprocess.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::data {

namespace {

/// Shannon entropy (bits) at bandwidth beta = 1 / (2 sigma^2), computed
/// over value-sorted squared distances so that rows with equal distance
/// multisets (duplicated points) produce bitwise-identical sums.
double entropy_at(const std::vector<double>& sorted_sq_dist, double beta, double& sum_p_out) {
    double sum_p = 0.0;
    double sum_dp = 0.0;
    for (const double d2 : sorted_sq_dist) {
        const double p = std::exp(-beta * d2);
        sum_p += p;
        sum_dp += p * d2;
    }
    sum_p_out = sum_p;
    if (sum_p <= 0.0) {
        return 0.0;
    }
    // H = log2(sum_p) + beta * E[d^2] / ln 2
    return (std::log(sum_p) + beta * sum_dp / sum_p) / std::log(2.0);
}

std::uint64_t hash_row_bytes(const Matrix& scaled, std::size_t row, std::uint64_t seed) {
    std::uint64_t h = rng::derive(seed, "tsne-init");
    for (std::size_t c = 0; c < scaled.n_cols; ++c) {
        std::uint64_t bits = 0;
        const double value = scaled.at(row, c);
        std::memcpy(&bits, &value, sizeof(bits));
        h = rng::derive(h, bits);
    }
    return h;
}

} // namespace

TsneResult tsne_compare(const std::vector<RawTable>& tables, const TsneConfig& config) {
    if (tables.size() < 2) {
        throw ValidationError("dataset comparability needs at least two tables");
    }
    if (config.components != 2) {
        throw ValidationError("only 2-component embeddings are supported");
    }
    for (const auto& table : tables) {
        if (table.n_rows() < 4) {
            throw ValidationError("each dataset needs at least 4 rows for the perplexity floor");
        }
    }

    // shared-feature projection: the intersection of feature names
    std::set<std::string> shared(tables[0].feature_names.begin(),
                                 tables[0].feature_names.end());
    for (std::size_t t = 1; t < tables.size(); ++t) {
        std::set<std::string> seen(tables[t].feature_names.begin(),
                                   tables[t].feature_names.end());
        std::set<std::string> kept;
        std::set_intersection(shared.begin(), shared.end(), seen.begin(), seen.end(),
                              std::inserter(kept, kept.begin()));
        shared = std::move(kept);
    }
    // keep the first table's column order for determinism
    std::vector<std::string> columns;
    for (const auto& name : tables[0].feature_names) {
        if (shared.count(name) > 0) {
            columns.push_back(name);
        }
    }
    if (columns.empty()) {
        throw ValidationError("datasets share no feature columns");
    }

    std::size_t total_rows = 0;
    for (const auto& table : tables) {
        total_rows += table.n_rows();
    }

    Matrix features(total_rows, columns.size());
    std::vector<int> dataset_of_row(total_rows);
    std::size_t row = 0;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const RawTable complete = impute(tables[t], ImputePolicy::MeanMedian);
        std::vector<std::size_t> col_index(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto it = std::find(complete.feature_names.begin(),
                                      complete.feature_names.end(), columns[c]);
            col_index[c] =
                static_cast<std::size_t>(it - complete.feature_names.begin());
        }
        for (std::size_t r = 0; r < complete.n_rows(); ++r) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
                features.at(row, c) = *complete.rows[r][col_index[c]];
            }
            dataset_of_row[row] = static_cast<int>(t);
            ++row;
        }
    }

    // joint min-max scaling so per-column ranges are comparable
    std::vector<std::uint32_t> all_rows(total_rows);
    for (std::size_t i = 0; i < total_rows; ++i) {
        all_rows[i] = static_cast<std::uint32_t>(i);
    }
    const Matrix scaled = minmax_transform(minmax_fit(features, all_rows), features);

    const std::size_t n = total_rows;
    const double perplexity =
        std::min(config.perplexity_cap, static_cast<double>(n) / 4.0);
    const double target_entropy = std::log2(perplexity);

    // pairwise squared distances
    std::vector<std::vector<double>> sq_dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < scaled.n_cols; ++c) {
                const double diff = scaled.at(i, c) - scaled.at(j, c);
                d2 += diff * diff;
            }
            sq_dist[i][j] = d2;
            sq_dist[j][i] = d2;
        }
    }

    // per-point bandwidth calibration: binary search on beta until the
    // conditional distribution's perplexity matches the target
    std::vector<std::vector<double>> p_conditional(n, std::vector<double>(n, 0.0));
    std::vector<double> row_perplexity(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> sorted_sq_dist;
        sorted_sq_dist.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sorted_sq_dist.push_back(sq_dist[i][j]);
            }
        }
        std::sort(sorted_sq_dist.begin(), sorted_sq_dist.end());

        double beta = 1.0;
        double beta_lo = -std::numeric_limits<double>::infinity();
        double beta_hi = std::numeric_limits<double>::infinity();
        double sum_p = 0.0;
        double entropy = entropy_at(sorted_sq_dist, beta, sum_p);
        for (int iter = 0; iter < 50 && std::abs(entropy - target_entropy) > 1e-5; ++iter) {
            if (entropy > target_entropy) {
                beta_lo = beta;
                beta = std::isinf(beta_hi) ? beta * 2.0 : (beta + beta_hi) / 2.0;
            } else {
                beta_hi = beta;
                beta = std::isinf(beta_lo) ? beta / 2.0 : (beta + beta_lo) / 2.0;
            }
            entropy = entropy_at(sorted_sq_dist, beta, sum_p);
        }
        row_perplexity[i] = std::exp2(entropy);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && sum_p > 0.0) {
                p_conditional[i][j] = std::exp(-beta * sq_dist[i][j]) / sum_p;
            }
        }
    }

    // symmetrized joint affinities
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                p[i][j] = (p_conditional[i][j] + p_conditional[j][i]) /
                          (2.0 * static_cast<double>(n));
            }
        }
    }

    // embedding initialized from a hash of each row's scaled feature bytes:
    // identical rows start identical and stay identical under the symmetric
    // gradient, so duplicated datasets produce centroid distance zero
    Matrix y(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        rng::SplitMix64 gen(hash_row_bytes(scaled, i, config.seed));
        y.at(i, 0) = 1e-4 * gen.next_gaussian();
        y.at(i, 1) = 1e-4 * gen.next_gaussian();
    }

    // step size scaled to the point count when not set explicitly; a fixed
    // hot rate makes the plain momentum descent oscillate on small inputs
    const double learning_rate = config.learning_rate > 0.0
                                     ? config.learning_rate
                                     : std::max(1.0, static_cast<double>(n) / 12.0);

    Matrix velocity(n, 2);
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (int iter = 0; iter < config.iterations; ++iter) {
        double w_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dy0 = y.at(i, 0) - y.at(j, 0);
                const double dy1 = y.at(i, 1) - y.at(j, 1);
                const double wij = 1.0 / (1.0 + dy0 * dy0 + dy1 * dy1);
                w[i][j] = wij;
                w[j][i] = wij;
                w_sum += 2.0 * wij;
            }
        }
        w_sum = std::max(w_sum, 1e-12);

        const double momentum =
            iter < config.momentum_switch ? config.momentum_early : config.momentum_late;
        for (std::size_t i = 0; i < n; ++i) {
            double g0 = 0.0;
            double g1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                const double q = w[i][j] / w_sum;
                const double coeff = 4.0 * (p[i][j] - q) * w[i][j];
                g0 += coeff * (y.at(i, 0) - y.at(j, 0));
                g1 += coeff * (y.at(i, 1) - y.at(j, 1));
            }
            velocity.at(i, 0) = momentum * velocity.at(i, 0) - learning_rate * g0;
            velocity.at(i, 1) = momentum * velocity.at(i, 1) - learning_rate * g1;
        }
        for (std::size_t i = 0; i < n; ++i) {
            y.at(i, 0) += velocity.at(i, 0);
            y.at(i, 1) += velocity.at(i, 1);
        }
    }

    TsneResult result;
    result.embedding = y;
    result.dataset_of_row = dataset_of_row;
    result.perplexity = perplexity;
    result.row_perplexity = std::move(row_perplexity);

    result.centroids.assign(tables.size(), {0.0, 0.0});
    std::vector<std::size_t> counts(tables.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = static_cast<std::size_t>(dataset_of_row[i]);
        result.centroids[t][0] += y.at(i, 0);
        result.centroids[t][1] += y.at(i, 1);
        ++counts[t];
    }
    for (std::size_t t = 0; t < tables.size(); ++t) {
        result.centroids[t][0] /= static_cast<double>(counts[t]);
        result.centroids[t][1] /= static_cast<double>(counts[t]);
    }

    result.centroid_distances = Matrix(tables.size(), tables.size());
    for (std::size_t a = 0; a < tables.size(); ++a) {
        for (std::size_t b = a + 1; b < tables.size(); ++b) {
            const double d0 = result.centroids[a][0] - result.centroids[b][0];
            const double d1 = result.centroids[a][1] - result.centroids[b][1];
            const double dist = std::sqrt(d0 * d0 + d1 * d1);
            result.centroid_distances.at(a, b) = dist;
            result.centroid_distances.at(b, a) = dist;
        }
    }

    double mean0 = 0.0;
    double mean1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean0 += y.at(i, 0);
        mean1 += y.at(i, 1);
    }
    mean0 /= static_cast<double>(n);
    mean1 /= static_cast<double>(n);
    double spread_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d0 = y.at(i, 0) - mean0;
        const double d1 = y.at(i, 1) - mean1;
        spread_sq += d0 * d0 + d1 * d1;
    }
    result.spread = std::sqrt(spread_sq / static_cast<double>(n));
    return result;
}

} // namespace hqnn::data
