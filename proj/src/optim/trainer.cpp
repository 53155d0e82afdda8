// SPDX-License-Identifier: Apache-2.0
#include "hqnn/optim/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "hqnn/data/preprocess.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::optim {

namespace {

std::vector<model::SampleView> make_views(const data::DesignMatrix& data) {
    std::vector<model::SampleView> views;
    views.reserve(data.n_rows());
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        views.push_back({std::span<const double>(data.rows[i]), data.labels[i]});
    }
    return views;
}

/// One full pass of shuffled mini-batch Adam updates. `t` is the running
/// Adam step count, carried across epochs.
void run_epoch(const model::HqnnConfig& config, const TrainConfig& train_cfg,
               const std::vector<model::SampleView>& train_views, model::ModelParams& params,
               AdamState& adam_state, long& t, std::uint64_t seed, int epoch) {
    std::vector<std::uint32_t> order(train_views.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<std::uint32_t>(i);
    }
    rng::SplitMix64 gen(rng::derive(seed, "shuffle", static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen.next_below(i));
        std::swap(order[i - 1], order[j]);
    }

    const std::size_t batch_size = static_cast<std::size_t>(train_cfg.batch_size);
    std::vector<model::SampleView> batch;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
        const std::size_t end = std::min(start + batch_size, order.size());
        batch.clear();
        for (std::size_t i = start; i < end; ++i) {
            batch.push_back(train_views[order[i]]);
        }
        const std::uint64_t grad_seed = rng::derive(
            seed, "grad", static_cast<std::uint64_t>(epoch), start / batch_size);
        const model::Gradients grads = model::gradient(config, params, batch, grad_seed);

        std::vector<double> flat_params = model::pack_params(params);
        std::vector<double> flat_grads;
        flat_grads.reserve(flat_params.size());
        flat_grads.insert(flat_grads.end(), grads.circuit.begin(), grads.circuit.end());
        flat_grads.insert(flat_grads.end(), grads.head_weights.begin(),
                          grads.head_weights.end());
        flat_grads.push_back(grads.head_bias);

        adam_step(flat_params, flat_grads, adam_state, ++t, train_cfg.adam);
        params = model::unpack_params(config, flat_params);
    }
}

} // namespace

bool EarlyStopping::observe(double val_loss) {
    ++epoch_;
    improved_last_ = best_epoch_ == 0 || val_loss < best_loss_ - min_improvement_;
    if (improved_last_) {
        best_loss_ = val_loss;
        best_epoch_ = epoch_;
        bad_epochs_ = 0;
        return false;
    }
    ++bad_epochs_;
    return bad_epochs_ >= patience_;
}

FoldResult train_one(const model::HqnnConfig& config, const TrainConfig& train_cfg,
                     const data::DesignMatrix& train, const data::DesignMatrix& val,
                     std::uint64_t seed, int fold_index) {
    if (train.n_rows() == 0 || val.n_rows() == 0) {
        throw DataError("training and validation sets must be non-empty");
    }
    const auto train_views = make_views(train);
    const auto val_views = make_views(val);

    model::ModelParams params = model::initial_params(config, rng::derive(seed, "init"));
    AdamState adam_state;
    long t = 0;

    EarlyStopping stopping(train_cfg.patience, train_cfg.min_improvement);
    FoldResult result;
    result.fold_index = fold_index;
    result.final_params = params;
    result.val_loss = std::numeric_limits<double>::infinity();

    for (int epoch = 1; epoch <= train_cfg.epochs; ++epoch) {
        run_epoch(config, train_cfg, train_views, params, adam_state, t, seed, epoch);
        const model::EvalResult val_eval = model::evaluate(
            config, params, val_views, rng::derive(seed, "val", static_cast<std::uint64_t>(epoch)));
        const bool stop = stopping.observe(val_eval.mean_loss);
        if (stopping.improved_last()) {
            result.final_params = params;
            result.val_loss = val_eval.mean_loss;
            result.val_accuracy = val_eval.accuracy;
        }
        result.epochs_ran = epoch;
        if (stop) {
            break;
        }
    }
    return result;
}

CvResult cross_validate(const model::HqnnConfig& config, const TrainConfig& train_cfg,
                        const data::DesignMatrix& training_split, std::uint64_t run_seed,
                        int workers) {
    const std::vector<int> fold_of =
        data::stratified_kfold(training_split.labels, train_cfg.folds, train_cfg.split_seed);

    CvResult result;
    result.folds.resize(static_cast<std::size_t>(train_cfg.folds));

    const auto run_fold = [&](int fold) {
        std::vector<std::uint32_t> train_rows;
        std::vector<std::uint32_t> val_rows;
        for (std::size_t i = 0; i < fold_of.size(); ++i) {
            if (fold_of[i] == fold) {
                val_rows.push_back(static_cast<std::uint32_t>(i));
            } else {
                train_rows.push_back(static_cast<std::uint32_t>(i));
            }
        }
        const data::DesignMatrix fold_train = data::select_rows(training_split, train_rows);
        const data::DesignMatrix fold_val = data::select_rows(training_split, val_rows);
        result.folds[static_cast<std::size_t>(fold)] =
            train_one(config, train_cfg, fold_train, fold_val,
                      rng::derive(run_seed, "fold", static_cast<std::uint64_t>(fold)), fold);
    };

    if (workers <= 1) {
        for (int fold = 0; fold < train_cfg.folds; ++fold) {
            run_fold(fold);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int thread_count = std::min(workers, train_cfg.folds);
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int w = 0; w < thread_count; ++w) {
            pool.emplace_back([&]() {
                for (int fold = next.fetch_add(1); fold < train_cfg.folds;
                     fold = next.fetch_add(1)) {
                    run_fold(fold);
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    double acc_sum = 0.0;
    for (const FoldResult& fold : result.folds) {
        acc_sum += fold.val_accuracy;
    }
    result.cv_accuracy_mean = acc_sum / static_cast<double>(train_cfg.folds);
    return result;
}

model::ModelParams train_full(const model::HqnnConfig& config, const TrainConfig& train_cfg,
                              const data::DesignMatrix& train, std::uint64_t seed,
                              int max_epochs) {
    if (train.n_rows() == 0) {
        throw DataError("training set must be non-empty");
    }
    const auto train_views = make_views(train);
    model::ModelParams params = model::initial_params(config, rng::derive(seed, "init"));
    AdamState adam_state;
    long t = 0;
    for (int epoch = 1; epoch <= max_epochs; ++epoch) {
        run_epoch(config, train_cfg, train_views, params, adam_state, t, seed, epoch);
    }
    return params;
}

int median_epochs(const std::vector<FoldResult>& folds) {
    if (folds.empty()) {
        return 1;
    }
    std::vector<int> epochs;
    epochs.reserve(folds.size());
    for (const FoldResult& fold : folds) {
        epochs.push_back(fold.epochs_ran);
    }
    std::sort(epochs.begin(), epochs.end());
    const std::size_t n = epochs.size();
    double median = 0.0;
    if (n % 2 == 1) {
        median = epochs[n / 2];
    } else {
        median = (static_cast<double>(epochs[n / 2 - 1]) + static_cast<double>(epochs[n / 2])) / 2.0;
    }
    return std::max(1, static_cast<int>(std::llround(median)));
}

} // namespace hqnn::optim
