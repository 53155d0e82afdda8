// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "hqnn/data/table.hpp"

namespace hqnn::data {

/// MeanMedian fills continuous columns with the column mean and binary
/// columns (observed values all in {0, 1}) with the column median.
/// LeaveEmpty realizes each missing cell as the column's observed minimum,
/// the value that min-max scaling sends to 0.
enum class ImputePolicy { MeanMedian, LeaveEmpty };

std::string_view to_string(ImputePolicy policy);

/// Returns a complete table; DataError when a column has no observed value.
RawTable impute(const RawTable& table, ImputePolicy policy);

/// Eigen decomposition of a symmetric matrix by the cyclic Jacobi method.
/// Eigenvalues come back sorted descending; `vectors` holds the matching
/// eigenvectors as columns.
struct EigenResult {
    std::vector<double> values;
    Matrix vectors;
};

EigenResult jacobi_eigen_symmetric(const Matrix& symmetric, double tolerance = 1e-12,
                                   int max_sweeps = 64);

/// Centering vector plus the top-k eigenvectors of the sample covariance
/// (rows of `components`). Each eigenvector's largest-|entry| coordinate is
/// made positive so the basis is reproducible. When the data rank is below
/// k the missing components are zero rows and `padded_components` counts
/// them.
struct PcaModel {
    std::vector<double> mean;
    Matrix components; ///< k x d
    std::vector<double> eigenvalues;
    int padded_components = 0;
};

PcaModel pca_fit(const Matrix& matrix, int k);
Matrix pca_transform(const PcaModel& model, const Matrix& matrix);

struct PcaReduced {
    Matrix reduced;
    PcaModel model;
};

PcaReduced pca_reduce(const Matrix& matrix, int k = kDesignFeatures);

/// Per-column min/max learned from the fit rows only; transform clamps to
/// [0, 1] and sends constant columns to 0.
struct MinMaxScaler {
    std::vector<double> col_min;
    std::vector<double> col_max;
};

MinMaxScaler minmax_fit(const Matrix& matrix, std::span<const std::uint32_t> fit_rows);
Matrix minmax_transform(const MinMaxScaler& scaler, const Matrix& matrix);
Matrix minmax_inverse(const MinMaxScaler& scaler, const Matrix& matrix);

struct SplitIndices {
    std::vector<std::uint32_t> train;
    std::vector<std::uint32_t> test;
};

/// Stratified split, deterministic at a fixed seed. The test side gets
/// ceil(n * test_ratio) rows, allocated per class by largest remainder.
SplitIndices stratified_split(std::span<const int> labels, double test_ratio = 0.3,
                              std::uint64_t seed = 42);

/// Fold id per row; per-fold class counts stay within +/-1 of proportional.
/// DataError when any class has fewer members than folds.
std::vector<int> stratified_kfold(std::span<const int> labels, int folds = 10,
                                  std::uint64_t seed = 42);

struct PrepResult {
    DesignMatrix train;
    DesignMatrix test;
};

/// Full pipeline: impute, stratified 70/30 membership, PCA to 8 components
/// fit on training rows, min-max to [0, 1] fit on training rows, assemble.
PrepResult preprocess(const RawTable& table, ImputePolicy policy, double test_ratio = 0.3,
                      std::uint64_t split_seed = 42);

} // namespace hqnn::data
