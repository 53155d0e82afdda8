// SPDX-License-Identifier: Apache-2.0
#include "hqnn/data/table.hpp"

#include <sstream>

namespace hqnn::data {

bool RawTable::complete() const {
    for (const auto& row : rows) {
        for (const auto& cell : row) {
            if (!cell.has_value()) {
                return false;
            }
        }
    }
    return true;
}

std::string Provenance::to_text() const {
    std::ostringstream out;
    out << "impute_policy = " << impute_policy << "\n";
    out << "test_ratio = " << test_ratio << "\n";
    out << "split_seed = " << split_seed << "\n";
    out << "pca_fit_rows = " << pca_fit_rows.size() << "\n";
    out << "scaler_fit_rows = " << scaler_fit_rows.size() << "\n";
    for (const auto& note : notes) {
        out << "note = " << note << "\n";
    }
    return out.str();
}

DesignMatrix select_rows(const DesignMatrix& source, const std::vector<std::uint32_t>& indices) {
    DesignMatrix subset;
    subset.provenance = source.provenance;
    subset.rows.reserve(indices.size());
    subset.labels.reserve(indices.size());
    subset.provenance.source_rows.clear();
    for (const std::uint32_t i : indices) {
        subset.rows.push_back(source.rows.at(i));
        subset.labels.push_back(source.labels.at(i));
        if (i < source.provenance.source_rows.size()) {
            subset.provenance.source_rows.push_back(source.provenance.source_rows[i]);
        }
    }
    return subset;
}

} // namespace hqnn::data
