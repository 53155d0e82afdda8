// SPDX-License-Identifier: Apache-2.0
#include "hqnn/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hqnn/errors.hpp"

namespace hqnn::data {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::string strip_quotes(const std::string& text) {
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        return text.substr(1, text.size() - 2);
    }
    return text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(strip_quotes(trim(cell)));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back("");
    }
    return cells;
}

std::optional<double> parse_number(const std::string& token) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc{} && ptr == end) {
        return value;
    }
    return std::nullopt;
}

} // namespace

std::map<std::string, std::string> read_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path);
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError("malformed line (expected key = value) in " + path + ": " + line);
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

CsvSchema CsvSchema::from_file(const std::string& path) {
    CsvSchema schema;
    for (const auto& [key, value] : read_kv_file(path)) {
        if (key == "label") {
            schema.label_column = value;
        } else if (key == "positive") {
            schema.positive_token = value;
        } else if (key == "missing") {
            schema.missing_tokens = {""};
            std::istringstream in(value);
            std::string token;
            while (std::getline(in, token, ',')) {
                schema.missing_tokens.insert(trim(token));
            }
        } else if (key.rfind("map.", 0) == 0) {
            const auto number = parse_number(value);
            if (!number) {
                throw DataError("schema map value is not numeric: " + key + " = " + value);
            }
            schema.token_map[key.substr(4)] = *number;
        } else {
            throw DataError("unknown schema key: " + key);
        }
    }
    return schema;
}

RawTable ingest_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        throw DataError("empty file or missing header row: " + path);
    }
    const std::vector<std::string> header = split_csv_line(line);

    std::ptrdiff_t label_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == schema.label_column) {
            label_col = static_cast<std::ptrdiff_t>(c);
            break;
        }
    }
    if (label_col < 0) {
        throw DataError("label column '" + schema.label_column + "' not found in " + path);
    }

    RawTable table;
    table.label_column = schema.label_column;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (static_cast<std::ptrdiff_t>(c) != label_col) {
            table.feature_names.push_back(header[c]);
        }
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw DataError(path + " line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        }

        std::vector<std::optional<double>> row;
        row.reserve(table.feature_names.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string& token = cells[c];
            if (static_cast<std::ptrdiff_t>(c) == label_col) {
                if (schema.missing_tokens.count(token) > 0) {
                    throw DataError(path + " line " + std::to_string(line_no) +
                                    ": missing label value");
                }
                table.labels.push_back(token == schema.positive_token ? 1 : 0);
                continue;
            }
            if (schema.missing_tokens.count(token) > 0) {
                row.emplace_back(std::nullopt);
                continue;
            }
            if (const auto number = parse_number(token)) {
                row.emplace_back(*number);
                continue;
            }
            const auto mapped = schema.token_map.find(token);
            if (mapped == schema.token_map.end()) {
                throw DataError(path + " line " + std::to_string(line_no) + ", column '" +
                                header[c] + "': unmapped categorical value '" + token + "'");
            }
            row.emplace_back(mapped->second);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) {
        throw DataError("no data rows in " + path);
    }
    return table;
}

void write_design_matrix_csv(const std::string& path, const DesignMatrix& matrix) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    for (int c = 0; c < kDesignFeatures; ++c) {
        out << "f" << c << ",";
    }
    out << "label\n";
    out.precision(17);
    for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
        for (int c = 0; c < kDesignFeatures; ++c) {
            out << matrix.rows[r][static_cast<std::size_t>(c)] << ",";
        }
        out << matrix.labels[r] << "\n";
    }
}

void write_raw_table_csv(const std::string& path, const RawTable& table) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    out.precision(17);
    for (const auto& name : table.feature_names) {
        out << name << ",";
    }
    out << table.label_column << "\n";
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        for (std::size_t c = 0; c < table.n_features(); ++c) {
            if (table.rows[r][c].has_value()) {
                out << *table.rows[r][c];
            }
            out << ",";
        }
        out << table.labels[r] << "\n";
    }
}

DesignMatrix read_design_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty design matrix file: " + path);
    }
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() != kDesignFeatures + 1 || header.back() != "label") {
        throw DataError(path + ": expected header f0..f7,label");
    }

    DesignMatrix matrix;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != kDesignFeatures + 1) {
            throw DataError(path + " line " + std::to_string(line_no) + ": expected " +
                            std::to_string(kDesignFeatures + 1) + " cells");
        }
        std::array<double, kDesignFeatures> row{};
        for (int c = 0; c < kDesignFeatures; ++c) {
            const auto value = parse_number(cells[static_cast<std::size_t>(c)]);
            if (!value || !std::isfinite(*value)) {
                throw DataError(path + " line " + std::to_string(line_no) +
                                ": non-numeric feature cell");
            }
            row[static_cast<std::size_t>(c)] = *value;
        }
        const auto label = parse_number(cells.back());
        if (!label || (*label != 0.0 && *label != 1.0)) {
            throw DataError(path + " line " + std::to_string(line_no) + ": label must be 0 or 1");
        }
        matrix.rows.push_back(row);
        matrix.labels.push_back(static_cast<int>(*label));
    }
    if (matrix.rows.empty()) {
        throw DataError("no data rows in " + path);
    }
    return matrix;
}

} // namespace hqnn::data
