// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>

#include "hqnn/data/table.hpp"

namespace hqnn::data {

/// Plain-text `key = value` file ('#' starts a comment). Shared by schema
/// and grid-spec files.
std::map<std::string, std::string> read_kv_file(const std::string& path);

/// Declares how a CSV maps onto a RawTable: which column is the label,
/// which token means the positive class, and how categorical tokens become
/// numbers. Schema file keys: `label`, `positive`, `missing` (comma list),
/// `map.<token> = <number>`.
struct CsvSchema {
    std::string label_column = "label";
    std::string positive_token = "1";
    std::map<std::string, double> token_map;
    std::set<std::string> missing_tokens = {"", "?"};

    static CsvSchema from_file(const std::string& path);
};

/// Reads a header-row CSV into a RawTable. Non-numeric cells go through the
/// schema token map; unmapped tokens raise DataError naming the row and
/// column. The label column maps to 1 on the positive token, 0 otherwise.
RawTable ingest_csv(const std::string& path, const CsvSchema& schema);

// DesignMatrix files: CSV with columns f0..f7,label.
void write_design_matrix_csv(const std::string& path, const DesignMatrix& matrix);
DesignMatrix read_design_matrix_csv(const std::string& path);

/// Writes a complete RawTable back out as a header-row CSV (missing cells
/// become empty fields).
void write_raw_table_csv(const std::string& path, const RawTable& table);

} // namespace hqnn::data
