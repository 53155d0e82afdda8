// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "hqnn/data/table.hpp"
#include "hqnn/dse/records.hpp"

namespace hqnn::dse {

struct SweepOptions {
    int workers = 1;       ///< concurrent grid points
    int fold_workers = 1;  ///< concurrent folds inside each run
    bool resume = false;   ///< skip run_ids already present in results_path
    std::string results_path; ///< JSONL sink; empty keeps results in memory only
};

/// Trains and evaluates one grid point: stratified CV over the training
/// split, a refit on the full split capped at the median early-stop epoch,
/// then the held-out test report with GPS composites and threshold curves.
RunRecord run_one(const PlannedRun& run, const optim::TrainConfig& train_cfg,
                  std::uint64_t base_seed, const data::DesignMatrix& train,
                  const data::DesignMatrix& test, int fold_workers = 1);

/// Executes every enumerated grid point. Individual failures become
/// status="failed" records and the sweep continues. Metric values depend
/// only on (spec, data); worker count and schedule cannot change them.
/// Returns all records (including pre-existing ones on resume) in
/// enumeration order.
std::vector<RunRecord> run_sweep(const GridSpec& spec, const data::DesignMatrix& train,
                                 const data::DesignMatrix& test, const SweepOptions& options);

} // namespace hqnn::dse
