// SPDX-License-Identifier: Apache-2.0
#include "hqnn/dse/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "hqnn/errors.hpp"

namespace hqnn::dse {

namespace {

/// Linear-interpolation quantile (the numpy default) over sorted values.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) {
        return sorted.front();
    }
    const double position = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(position));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(position));
    const double frac = position - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

/// Sort key putting levels in the default grid's order: enum declaration
/// order for the categorical factors, analytic-then-ascending for shots;
/// anything else sorts lexicographically after the known levels.
std::pair<long, std::string> level_rank(Factor factor, const std::string& level) {
    static const std::vector<std::string> known[3] = {
        {"amplitude", "angle", "basis", "iqp", "qsample"},
        {"basic", "ring", "star", "strong", "alternating"},
        {"pauli-x", "pauli-y", "pauli-z", "pauli-xyz", "hadamard"},
    };
    if (factor == Factor::Shots) {
        if (level == "analytic") {
            return {-1, level};
        }
        try {
            return {std::stol(level), level};
        } catch (const std::exception&) {
            return {std::numeric_limits<long>::max(), level};
        }
    }
    const auto& levels = known[static_cast<std::size_t>(factor)];
    const auto it = std::find(levels.begin(), levels.end(), level);
    if (it != levels.end()) {
        return {it - levels.begin(), level};
    }
    return {std::numeric_limits<long>::max(), level};
}

/// Grouped metric values per level, in canonical level order; record
/// permutations cannot change the grouping.
std::vector<std::pair<std::string, std::vector<double>>> group_by_level(
    std::span<const RunRecord> records, Factor factor, std::string_view metric) {
    std::map<std::string, std::vector<double>> groups;
    for (const RunRecord& record : records) {
        if (record.status != "ok") {
            continue;
        }
        groups[factor_level(record, factor)].push_back(
            metrics::metric_value(record.report, metric));
    }
    if (groups.empty()) {
        throw ValidationError("no successful records to aggregate");
    }
    std::vector<std::pair<std::string, std::vector<double>>> ordered(groups.begin(),
                                                                     groups.end());
    std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
        return level_rank(factor, a.first) < level_rank(factor, b.first);
    });
    return ordered;
}

} // namespace

std::string_view to_string(Factor factor) {
    switch (factor) {
    case Factor::Encoding:
        return "encoding";
    case Factor::Architecture:
        return "architecture";
    case Factor::Measurement:
        return "measurement";
    case Factor::Shots:
        return "shots";
    }
    return "?";
}

std::optional<Factor> factor_from_string(std::string_view token) {
    if (token == "encoding") return Factor::Encoding;
    if (token == "architecture") return Factor::Architecture;
    if (token == "measurement") return Factor::Measurement;
    if (token == "shots") return Factor::Shots;
    return std::nullopt;
}

std::string factor_level(const RunRecord& record, Factor factor) {
    switch (factor) {
    case Factor::Encoding:
        return std::string(encode::to_string(record.config.encoding));
    case Factor::Architecture:
        return std::string(ansatz::to_string(record.config.architecture));
    case Factor::Measurement:
        return std::string(model::to_string(record.config.measurement));
    case Factor::Shots:
        return shots_token(record.config.shot_plan);
    }
    return "?";
}

std::vector<FactorMeanRow> factor_means(std::span<const RunRecord> records, Factor factor,
                                        std::string_view metric) {
    const auto groups = group_by_level(records, factor, metric);
    std::vector<FactorMeanRow> rows;
    rows.reserve(groups.size());
    for (const auto& [level, values] : groups) {
        FactorMeanRow row;
        row.level = level;
        row.n = static_cast<int>(values.size());
        double sum = 0.0;
        for (const double v : values) {
            sum += v;
        }
        row.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double sq = 0.0;
            for (const double v : values) {
                sq += (v - row.mean) * (v - row.mean);
            }
            row.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BoxStats> factor_distribution(std::span<const RunRecord> records, Factor factor,
                                          std::string_view metric) {
    const auto groups = group_by_level(records, factor, metric);
    std::vector<BoxStats> rows;
    rows.reserve(groups.size());
    for (const auto& [level, raw_values] : groups) {
        std::vector<double> values = raw_values;
        std::sort(values.begin(), values.end());

        BoxStats stats;
        stats.level = level;
        stats.n = static_cast<int>(values.size());
        stats.q1 = quantile_sorted(values, 0.25);
        stats.median = quantile_sorted(values, 0.5);
        stats.q3 = quantile_sorted(values, 0.75);
        const double iqr = stats.q3 - stats.q1;
        const double low_fence = stats.q1 - 1.5 * iqr;
        const double high_fence = stats.q3 + 1.5 * iqr;
        stats.whisker_low = stats.q1;
        stats.whisker_high = stats.q3;
        for (const double v : values) {
            if (v >= low_fence) {
                stats.whisker_low = v;
                break;
            }
        }
        for (auto it = values.rbegin(); it != values.rend(); ++it) {
            if (*it <= high_fence) {
                stats.whisker_high = *it;
                break;
            }
        }
        for (const double v : values) {
            if (v < low_fence || v > high_fence) {
                stats.outliers.push_back(v);
            }
        }
        rows.push_back(std::move(stats));
    }
    return rows;
}

std::vector<std::string> default_overlap_metrics() {
    return {"accuracy", "mcc_f1", "sens_spec", "gps1", "gps2", "gps3", "gps4"};
}

OverlapTable top5_overlap(std::span<const RunRecord> records,
                          std::span<const std::string> metric_list, int top_k, int min_count) {
    if (metric_list.empty()) {
        throw ValidationError("overlap needs a non-empty metric list");
    }
    std::vector<const RunRecord*> ok;
    for (const RunRecord& record : records) {
        if (record.status == "ok") {
            ok.push_back(&record);
        }
    }
    if (ok.size() < static_cast<std::size_t>(top_k)) {
        throw ValidationError("overlap needs at least " + std::to_string(top_k) + " records");
    }

    struct RowAccumulator {
        const RunRecord* record = nullptr;
        int count = 0;
        int best_rank = 0;
        std::vector<std::optional<OverlapCell>> cells;
    };
    std::map<std::string, RowAccumulator> accumulators;

    for (std::size_t m = 0; m < metric_list.size(); ++m) {
        std::vector<const RunRecord*> ranked = ok;
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](const RunRecord* a, const RunRecord* b) {
                             const double va = metrics::metric_value(a->report, metric_list[m]);
                             const double vb = metrics::metric_value(b->report, metric_list[m]);
                             if (va != vb) {
                                 return va > vb;
                             }
                             return a->run_index < b->run_index;
                         });
        const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(top_k),
                                                       ranked.size());
        for (std::size_t r = 0; r < keep; ++r) {
            auto& acc = accumulators[ranked[r]->run_id];
            if (acc.record == nullptr) {
                acc.record = ranked[r];
                acc.best_rank = top_k + 1;
                acc.cells.assign(metric_list.size(), std::nullopt);
            }
            const int rank = static_cast<int>(r) + 1;
            acc.cells[m] = OverlapCell{rank, metrics::metric_value(ranked[r]->report,
                                                                   metric_list[m])};
            acc.count += 1;
            acc.best_rank = std::min(acc.best_rank, rank);
        }
    }

    OverlapTable table;
    table.metrics.assign(metric_list.begin(), metric_list.end());
    std::vector<const RowAccumulator*> kept;
    for (const auto& [run_id, acc] : accumulators) {
        if (acc.count >= min_count) {
            kept.push_back(&acc);
        }
    }
    std::sort(kept.begin(), kept.end(), [](const RowAccumulator* a, const RowAccumulator* b) {
        if (a->count != b->count) {
            return a->count > b->count;
        }
        if (a->best_rank != b->best_rank) {
            return a->best_rank < b->best_rank;
        }
        return a->record->run_index < b->record->run_index;
    });
    for (const RowAccumulator* acc : kept) {
        OverlapRow row;
        row.run_id = acc->record->run_id;
        row.display = config_display(acc->record->config);
        row.run_index = acc->record->run_index;
        row.count = acc->count;
        row.cells = acc->cells;
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace hqnn::dse
