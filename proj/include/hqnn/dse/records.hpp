// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqnn/dse/grid.hpp"
#include "hqnn/metrics/metrics.hpp"

namespace hqnn::dse {

inline constexpr int kResultsSchemaVersion = 1;

struct FoldSummary {
    int fold_index = 0;
    double val_accuracy = 0.0;
    double val_loss = 0.0;
    int epochs_ran = 0;
};

/// Everything one trained grid point leaves behind: per-fold CV numbers,
/// the held-out test report, threshold curves, the full seed derivation and
/// the recipe fingerprint that pins toolkit-level decisions.
struct RunRecord {
    int schema_version = kResultsSchemaVersion;
    std::string run_id;
    int run_index = 0;
    model::HqnnConfig config;
    int param_count = 0;
    std::uint64_t base_seed = 0;
    std::uint64_t run_seed = 0;
    std::vector<FoldSummary> folds;
    double cv_accuracy_mean = 0.0;
    int refit_epochs = 0;
    metrics::MetricsReport report;
    std::vector<metrics::ThresholdCurve> curves;
    double wall_time_seconds = 0.0;
    std::string status = "ok"; ///< "ok" | "failed"
    std::string error;
    std::string decisions;
};

/// The recipe fingerprint recorded on every run.
std::string decisions_fingerprint();

std::string record_to_json_line(const RunRecord& record);
/// IntegrityError (with the 1-based line number) on malformed lines.
RunRecord record_from_json_line(const std::string& line, std::size_t line_number);

void append_record_jsonl(const std::string& path, const RunRecord& record);
std::vector<RunRecord> read_records_jsonl(const std::string& path);

} // namespace hqnn::dse
