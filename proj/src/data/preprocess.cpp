// SPDX-License-Identifier: Apache-2.0
#include "hqnn/data/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::data {

namespace {

struct ColumnStats {
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    bool binary = false;
    std::size_t observed = 0;
};

ColumnStats column_stats(const RawTable& table, std::size_t col) {
    ColumnStats stats;
    std::vector<double> observed;
    observed.reserve(table.n_rows());
    for (const auto& row : table.rows) {
        if (row[col].has_value()) {
            observed.push_back(*row[col]);
        }
    }
    stats.observed = observed.size();
    if (observed.empty()) {
        return stats;
    }
    stats.mean = std::accumulate(observed.begin(), observed.end(), 0.0) /
                 static_cast<double>(observed.size());
    stats.min = *std::min_element(observed.begin(), observed.end());
    stats.binary = std::all_of(observed.begin(), observed.end(),
                               [](double v) { return v == 0.0 || v == 1.0; });
    std::sort(observed.begin(), observed.end());
    // lower median keeps binary fills in {0, 1}
    stats.median = observed[(observed.size() - 1) / 2];
    return stats;
}

void shuffle_in_place(std::vector<std::uint32_t>& items, rng::SplitMix64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

std::vector<std::vector<std::uint32_t>> rows_by_class(std::span<const int> labels) {
    std::vector<std::vector<std::uint32_t>> classes(2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw DataError("labels must be binary");
        }
        classes[static_cast<std::size_t>(labels[i])].push_back(static_cast<std::uint32_t>(i));
    }
    return classes;
}

Matrix slice_rows(const Matrix& matrix, std::span<const std::uint32_t> rows) {
    Matrix out(rows.size(), matrix.n_cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < matrix.n_cols; ++c) {
            out.at(r, c) = matrix.at(rows[r], c);
        }
    }
    return out;
}

} // namespace

std::string_view to_string(ImputePolicy policy) {
    return policy == ImputePolicy::MeanMedian ? "mean-median" : "leave-empty";
}

RawTable impute(const RawTable& table, ImputePolicy policy) {
    RawTable filled = table;
    for (std::size_t c = 0; c < table.n_features(); ++c) {
        bool any_missing = false;
        for (const auto& row : table.rows) {
            if (!row[c].has_value()) {
                any_missing = true;
                break;
            }
        }
        if (!any_missing) {
            continue;
        }
        const ColumnStats stats = column_stats(table, c);
        if (stats.observed == 0) {
            throw DataError("column '" + table.feature_names[c] + "' has no observed values");
        }
        double fill = 0.0;
        switch (policy) {
        case ImputePolicy::MeanMedian:
            fill = stats.binary ? stats.median : stats.mean;
            break;
        case ImputePolicy::LeaveEmpty:
            fill = stats.min;
            break;
        }
        for (auto& row : filled.rows) {
            if (!row[c].has_value()) {
                row[c] = fill;
            }
        }
    }
    return filled;
}

EigenResult jacobi_eigen_symmetric(const Matrix& symmetric, double tolerance, int max_sweeps) {
    if (symmetric.n_rows != symmetric.n_cols || symmetric.n_rows == 0) {
        throw ValidationError("jacobi solver needs a non-empty square matrix");
    }
    const std::size_t n = symmetric.n_rows;
    Matrix a = symmetric;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        v.at(i, i) = 1.0;
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scale = std::max(scale, std::abs(a.at(i, j)));
        }
    }
    if (scale == 0.0) {
        scale = 1.0;
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a.at(p, q) * a.at(p, q);
            }
        }
        if (std::sqrt(off) <= tolerance * scale) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) <= 1e-300) {
                    continue;
                }
                // classic Jacobi rotation zeroing a[p][q]
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenResult result;
    result.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.values[i] = a.at(i, i);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return result.values[x] > result.values[y]; });

    EigenResult sorted;
    sorted.values.resize(n);
    sorted.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted.values[j] = result.values[order[j]];
        for (std::size_t i = 0; i < n; ++i) {
            sorted.vectors.at(i, j) = v.at(i, order[j]);
        }
    }
    return sorted;
}

PcaModel pca_fit(const Matrix& matrix, int k) {
    if (k < 1) {
        throw ValidationError("PCA needs k >= 1");
    }
    if (matrix.n_rows < static_cast<std::size_t>(k) ||
        matrix.n_cols < static_cast<std::size_t>(k)) {
        throw ValidationError("PCA needs at least k rows and k columns");
    }
    const std::size_t n = matrix.n_rows;
    const std::size_t d = matrix.n_cols;

    PcaModel model;
    model.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            model.mean[c] += matrix.at(r, c);
        }
    }
    for (double& m : model.mean) {
        m /= static_cast<double>(n);
    }

    // sample covariance (n - 1 divisor)
    Matrix cov(d, d);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = matrix.at(r, i) - model.mean[i];
            for (std::size_t j = i; j < d; ++j) {
                cov.at(i, j) += xi * (matrix.at(r, j) - model.mean[j]);
            }
        }
    }
    const double divisor = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            cov.at(i, j) /= divisor;
            cov.at(j, i) = cov.at(i, j);
        }
    }

    const EigenResult eigen = jacobi_eigen_symmetric(cov);
    const double max_eigenvalue = std::max(eigen.values.front(), 0.0);
    const double rank_floor = std::max(max_eigenvalue, 1.0) * 1e-12;

    model.components = Matrix(static_cast<std::size_t>(k), d);
    model.eigenvalues.assign(static_cast<std::size_t>(k), 0.0);
    for (int comp = 0; comp < k; ++comp) {
        const double value = eigen.values[static_cast<std::size_t>(comp)];
        if (value <= rank_floor) {
            ++model.padded_components; // rank-deficient: component stays zero
            continue;
        }
        model.eigenvalues[static_cast<std::size_t>(comp)] = value;
        // sign convention: the largest-|entry| coordinate is positive
        std::size_t arg_max = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double entry = std::abs(eigen.vectors.at(i, static_cast<std::size_t>(comp)));
            if (entry > best) {
                best = entry;
                arg_max = i;
            }
        }
        const double sign =
            eigen.vectors.at(arg_max, static_cast<std::size_t>(comp)) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            model.components.at(static_cast<std::size_t>(comp), i) =
                sign * eigen.vectors.at(i, static_cast<std::size_t>(comp));
        }
    }
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& matrix) {
    if (matrix.n_cols != model.mean.size()) {
        throw ValidationError("PCA transform: column count mismatch");
    }
    const std::size_t k = model.components.n_rows;
    Matrix out(matrix.n_rows, k);
    for (std::size_t r = 0; r < matrix.n_rows; ++r) {
        for (std::size_t comp = 0; comp < k; ++comp) {
            double dot = 0.0;
            for (std::size_t c = 0; c < matrix.n_cols; ++c) {
                dot += (matrix.at(r, c) - model.mean[c]) * model.components.at(comp, c);
            }
            out.at(r, comp) = dot;
        }
    }
    return out;
}

PcaReduced pca_reduce(const Matrix& matrix, int k) {
    PcaReduced result;
    result.model = pca_fit(matrix, k);
    result.reduced = pca_transform(result.model, matrix);
    return result;
}

MinMaxScaler minmax_fit(const Matrix& matrix, std::span<const std::uint32_t> fit_rows) {
    if (fit_rows.empty()) {
        throw ValidationError("min-max scaler needs at least one fit row");
    }
    MinMaxScaler scaler;
    scaler.col_min.assign(matrix.n_cols, std::numeric_limits<double>::infinity());
    scaler.col_max.assign(matrix.n_cols, -std::numeric_limits<double>::infinity());
    for (const std::uint32_t r : fit_rows) {
        for (std::size_t c = 0; c < matrix.n_cols; ++c) {
            scaler.col_min[c] = std::min(scaler.col_min[c], matrix.at(r, c));
            scaler.col_max[c] = std::max(scaler.col_max[c], matrix.at(r, c));
        }
    }
    return scaler;
}

Matrix minmax_transform(const MinMaxScaler& scaler, const Matrix& matrix) {
    if (matrix.n_cols != scaler.col_min.size()) {
        throw ValidationError("min-max transform: column count mismatch");
    }
    Matrix out(matrix.n_rows, matrix.n_cols);
    for (std::size_t c = 0; c < matrix.n_cols; ++c) {
        const double range = scaler.col_max[c] - scaler.col_min[c];
        for (std::size_t r = 0; r < matrix.n_rows; ++r) {
            double scaled = 0.0; // constant columns map to 0
            if (range > 0.0) {
                scaled = (matrix.at(r, c) - scaler.col_min[c]) / range;
            }
            out.at(r, c) = std::clamp(scaled, 0.0, 1.0);
        }
    }
    return out;
}

Matrix minmax_inverse(const MinMaxScaler& scaler, const Matrix& matrix) {
    if (matrix.n_cols != scaler.col_min.size()) {
        throw ValidationError("min-max inverse: column count mismatch");
    }
    Matrix out(matrix.n_rows, matrix.n_cols);
    for (std::size_t c = 0; c < matrix.n_cols; ++c) {
        const double range = scaler.col_max[c] - scaler.col_min[c];
        for (std::size_t r = 0; r < matrix.n_rows; ++r) {
            out.at(r, c) = scaler.col_min[c] + matrix.at(r, c) * range;
        }
    }
    return out;
}

SplitIndices stratified_split(std::span<const int> labels, double test_ratio,
                              std::uint64_t seed) {
    if (test_ratio <= 0.0 || test_ratio >= 1.0) {
        throw ValidationError("test ratio must lie strictly between 0 and 1");
    }
    auto classes = rows_by_class(labels);
    for (const auto& members : classes) {
        if (members.size() < 2) {
            throw DataError("stratified split needs at least two members per class");
        }
    }

    const std::size_t total_test = static_cast<std::size_t>(
        std::ceil(static_cast<double>(labels.size()) * test_ratio));

    // per-class test counts by largest remainder, summing to total_test
    std::vector<std::size_t> test_counts(classes.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const double exact = static_cast<double>(classes[k].size()) * test_ratio;
        test_counts[k] = static_cast<std::size_t>(std::floor(exact));
        remainders.emplace_back(exact - std::floor(exact), k);
        assigned += test_counts[k];
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return a.second < b.second;
    });
    for (std::size_t i = 0; assigned < total_test && i < remainders.size(); ++i) {
        ++test_counts[remainders[i].second];
        ++assigned;
    }

    SplitIndices split;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        auto members = classes[k];
        rng::SplitMix64 gen(rng::derive(seed, "split-class", k));
        shuffle_in_place(members, gen);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i < test_counts[k]) {
                split.test.push_back(members[i]);
            } else {
                split.train.push_back(members[i]);
            }
        }
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

std::vector<int> stratified_kfold(std::span<const int> labels, int folds, std::uint64_t seed) {
    if (folds < 2) {
        throw ValidationError("k-fold needs at least two folds");
    }
    auto classes = rows_by_class(labels);
    for (const auto& members : classes) {
        if (members.size() < static_cast<std::size_t>(folds)) {
            throw DataError("stratified k-fold needs >= " + std::to_string(folds) +
                            " members per class, got " + std::to_string(members.size()));
        }
    }
    std::vector<int> fold_of(labels.size(), -1);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        auto members = classes[k];
        rng::SplitMix64 gen(rng::derive(seed, "fold-class", k));
        shuffle_in_place(members, gen);
        for (std::size_t i = 0; i < members.size(); ++i) {
            fold_of[members[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
        }
    }
    return fold_of;
}

PrepResult preprocess(const RawTable& table, ImputePolicy policy, double test_ratio,
                      std::uint64_t split_seed) {
    const RawTable complete = impute(table, policy);
    const std::size_t d = complete.n_features();
    if (d < kDesignFeatures) {
        throw DataError("need at least " + std::to_string(kDesignFeatures) +
                        " feature columns, got " + std::to_string(d));
    }

    Matrix raw(complete.n_rows(), d);
    for (std::size_t r = 0; r < complete.n_rows(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            raw.at(r, c) = *complete.rows[r][c];
        }
    }

    // split membership first so PCA and the scaler only ever see training rows
    const SplitIndices split = stratified_split(complete.labels, test_ratio, split_seed);

    const Matrix train_raw = slice_rows(raw, split.train);
    const PcaModel pca = pca_fit(train_raw, kDesignFeatures);
    const Matrix reduced = pca_transform(pca, raw);

    const Matrix train_reduced = slice_rows(reduced, split.train);
    MinMaxScaler scaler;
    {
        std::vector<std::uint32_t> all_train_rows(train_reduced.n_rows);
        std::iota(all_train_rows.begin(), all_train_rows.end(), 0u);
        scaler = minmax_fit(train_reduced, all_train_rows);
    }
    const Matrix scaled = minmax_transform(scaler, reduced);

    Provenance provenance;
    provenance.impute_policy = std::string(to_string(policy));
    provenance.test_ratio = test_ratio;
    provenance.split_seed = split_seed;
    provenance.pca_fit_rows = split.train;
    provenance.scaler_fit_rows = split.train;
    if (policy == ImputePolicy::LeaveEmpty) {
        provenance.notes.push_back("missing cells realized as column minimum (scaled zero)");
    }
    if (pca.padded_components > 0) {
        provenance.notes.push_back("pca padded " + std::to_string(pca.padded_components) +
                                   " rank-deficient components with zeros");
    }

    const auto assemble = [&](const std::vector<std::uint32_t>& rows) {
        DesignMatrix out;
        out.provenance = provenance;
        out.provenance.source_rows = rows;
        out.rows.reserve(rows.size());
        out.labels.reserve(rows.size());
        for (const std::uint32_t r : rows) {
            std::array<double, kDesignFeatures> features{};
            for (int c = 0; c < kDesignFeatures; ++c) {
                features[static_cast<std::size_t>(c)] = scaled.at(r, static_cast<std::size_t>(c));
            }
            out.rows.push_back(features);
            out.labels.push_back(complete.labels[r]);
        }
        return out;
    };

    PrepResult result;
    result.train = assemble(split.train);
    result.test = assemble(split.test);
    return result;
}

} // namespace hqnn::data
