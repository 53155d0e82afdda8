// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hqnn/dse/records.hpp"

namespace hqnn::dse {

enum class Factor { Encoding, Architecture, Measurement, Shots };

std::string_view to_string(Factor factor);
std::optional<Factor> factor_from_string(std::string_view token);

/// The factor level a record sits at, as its canonical token.
std::string factor_level(const RunRecord& record, Factor factor);

struct FactorMeanRow {
    std::string level;
    double mean = 0.0;
    double stddev = 0.0; ///< sample standard deviation (0 for n == 1)
    int n = 0;
};

/// Arithmetic mean of one metric per factor level over the ok-status
/// records, in the level order of the default grid (unknown levels last).
std::vector<FactorMeanRow> factor_means(std::span<const RunRecord> records, Factor factor,
                                        std::string_view metric);

struct BoxStats {
    std::string level;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;  ///< smallest point >= q1 - 1.5 IQR
    double whisker_high = 0.0; ///< largest point <= q3 + 1.5 IQR
    std::vector<double> outliers;
    int n = 0;
};

/// Box-plot statistics (linear-interpolation quartiles) per factor level.
std::vector<BoxStats> factor_distribution(std::span<const RunRecord> records, Factor factor,
                                          std::string_view metric);

struct OverlapCell {
    int rank = 0; ///< 1-based rank within the metric's Top-5
    double value = 0.0;
};

struct OverlapRow {
    std::string run_id;
    std::string display;
    int run_index = 0;
    int count = 0;
    std::vector<std::optional<OverlapCell>> cells; ///< one per requested metric
};

struct OverlapTable {
    std::vector<std::string> metrics;
    std::vector<OverlapRow> rows;
};

/// Default ranking columns of the overlap tables.
std::vector<std::string> default_overlap_metrics();

/// Per metric: rank ok-status records descending (ties broken by run_index
/// ascending) and keep the Top-k. Rows recurring in at least `min_count`
/// lists survive, sorted by count descending, then best rank, then
/// run_index.
OverlapTable top5_overlap(std::span<const RunRecord> records,
                          std::span<const std::string> metric_list, int top_k = 5,
                          int min_count = 3);

} // namespace hqnn::dse
