// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hqnn::data {

/// Typed CSV contents after categorical mapping. Cells may be missing;
/// labels are already binary.
struct RawTable {
    std::vector<std::string> feature_names;
    std::vector<std::vector<std::optional<double>>> rows; ///< rows x features
    std::vector<int> labels;                              ///< 0/1 per row
    std::string label_column;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_features() const { return feature_names.size(); }
    bool complete() const;
};

/// Dense row-major matrix used by the preprocessing pipeline.
struct Matrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : n_rows(rows), n_cols(cols), values(rows * cols, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return values[r * n_cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }
};

/// Preprocessing recipe record carried on every DesignMatrix. The fit row
/// lists hold the pre-split row indices each fitted transform saw, which is
/// what the leak-freedom assertion checks.
struct Provenance {
    std::string impute_policy;
    double test_ratio = 0.0;
    std::uint64_t split_seed = 0;
    std::vector<std::uint32_t> pca_fit_rows;
    std::vector<std::uint32_t> scaler_fit_rows;
    std::vector<std::uint32_t> source_rows; ///< pre-split indices of this matrix's rows
    std::vector<std::string> notes;

    std::string to_text() const;
};

inline constexpr int kDesignFeatures = 8;

/// Preprocessed features: rows x 8 columns in [0, 1] plus binary labels.
struct DesignMatrix {
    std::vector<std::array<double, kDesignFeatures>> rows;
    std::vector<int> labels;
    Provenance provenance;

    std::size_t n_rows() const { return rows.size(); }
};

/// Row subset (copying); used to materialize CV folds.
DesignMatrix select_rows(const DesignMatrix& source, const std::vector<std::uint32_t>& indices);

} // namespace hqnn::data
