// SPDX-License-Identifier: Apache-2.0
#include "hqnn/dse/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

#include "hqnn/rng.hpp"

namespace hqnn::dse {

namespace {

std::vector<model::SampleView> make_views(const data::DesignMatrix& data) {
    std::vector<model::SampleView> views;
    views.reserve(data.n_rows());
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        views.push_back({std::span<const double>(data.rows[i]), data.labels[i]});
    }
    return views;
}

} // namespace

RunRecord run_one(const PlannedRun& run, const optim::TrainConfig& train_cfg,
                  std::uint64_t base_seed, const data::DesignMatrix& train,
                  const data::DesignMatrix& test, int fold_workers) {
    const auto start = std::chrono::steady_clock::now();

    RunRecord record;
    record.run_id = run.run_id;
    record.run_index = run.run_index;
    record.config = run.config;
    record.param_count = run.config.circuit_param_count();
    record.base_seed = base_seed;
    record.run_seed = run.seed;
    record.decisions = decisions_fingerprint();

    const optim::CvResult cv =
        optim::cross_validate(run.config, train_cfg, train, run.seed, fold_workers);
    for (const optim::FoldResult& fold : cv.folds) {
        record.folds.push_back(
            FoldSummary{fold.fold_index, fold.val_accuracy, fold.val_loss, fold.epochs_ran});
    }
    record.cv_accuracy_mean = cv.cv_accuracy_mean;
    record.refit_epochs = optim::median_epochs(cv.folds);

    const model::ModelParams refit = optim::train_full(
        run.config, train_cfg, train, rng::derive(run.seed, "refit"), record.refit_epochs);

    const auto test_views = make_views(test);
    const model::EvalResult test_eval =
        model::evaluate(run.config, refit, test_views, rng::derive(run.seed, "test"));

    record.report = metrics::evaluate_report(test.labels, test_eval.probabilities,
                                             cv.cv_accuracy_mean);
    for (const auto kind :
         {metrics::CurveKind::MccF1, metrics::CurveKind::SensSpec, metrics::CurveKind::Roc}) {
        record.curves.push_back(
            metrics::threshold_curve(test.labels, test_eval.probabilities, kind));
    }

    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

std::vector<RunRecord> run_sweep(const GridSpec& spec, const data::DesignMatrix& train,
                                 const data::DesignMatrix& test, const SweepOptions& options) {
    const std::vector<PlannedRun> planned = enumerate_grid(spec);

    std::map<std::string, RunRecord> done;
    if (options.resume && !options.results_path.empty() &&
        std::filesystem::exists(options.results_path)) {
        for (RunRecord& record : read_records_jsonl(options.results_path)) {
            done.emplace(record.run_id, std::move(record));
        }
    }

    std::vector<const PlannedRun*> pending;
    for (const PlannedRun& run : planned) {
        if (done.find(run.run_id) == done.end()) {
            pending.push_back(&run);
        }
    }

    std::mutex sink_mutex;
    std::map<std::string, RunRecord> fresh;
    const auto execute = [&](const PlannedRun& run) {
        RunRecord record;
        try {
            record = run_one(run, spec.train, spec.base_seed, train, test,
                             options.fold_workers);
        } catch (const std::exception& e) {
            record = RunRecord{};
            record.run_id = run.run_id;
            record.run_index = run.run_index;
            record.config = run.config;
            record.param_count = run.config.circuit_param_count();
            record.base_seed = spec.base_seed;
            record.run_seed = run.seed;
            record.decisions = decisions_fingerprint();
            record.status = "failed";
            record.error = e.what();
        }
        const std::lock_guard<std::mutex> lock(sink_mutex);
        if (!options.results_path.empty()) {
            append_record_jsonl(options.results_path, record);
        }
        fresh.emplace(record.run_id, std::move(record));
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1 || pending.size() <= 1) {
        for (const PlannedRun* run : pending) {
            execute(*run);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t thread_count =
            std::min<std::size_t>(static_cast<std::size_t>(workers), pending.size());
        pool.reserve(thread_count);
        for (std::size_t w = 0; w < thread_count; ++w) {
            pool.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < pending.size();
                     i = next.fetch_add(1)) {
                    execute(*pending[i]);
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    std::vector<RunRecord> records;
    records.reserve(planned.size());
    for (const PlannedRun& run : planned) {
        const auto fresh_it = fresh.find(run.run_id);
        if (fresh_it != fresh.end()) {
            records.push_back(fresh_it->second);
            continue;
        }
        const auto done_it = done.find(run.run_id);
        if (done_it != done.end()) {
            records.push_back(done_it->second);
        }
    }
    return records;
}

} // namespace hqnn::dse
