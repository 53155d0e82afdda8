// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "hqnn/data/table.hpp"
#include "hqnn/model/model.hpp"
#include "hqnn/optim/adam.hpp"

namespace hqnn::optim {

/// The unified training protocol: 50 epochs of batch-16 Adam at lr 1e-3,
/// early stopping on validation loss with patience 5, 10-fold stratified CV
/// seeded at 42. Everything is overridable for desk-scale runs.
struct TrainConfig {
    int epochs = 50;
    int batch_size = 16;
    AdamConfig adam;
    int patience = 5;
    double min_improvement = 1e-6;
    int folds = 10;
    std::uint64_t split_seed = 42;
};

/// Patience counter over validation losses. An epoch improves when its loss
/// undercuts the best seen by at least min_improvement.
class EarlyStopping {
public:
    EarlyStopping(int patience, double min_improvement)
        : patience_(patience), min_improvement_(min_improvement) {}

    /// Feed the next epoch's validation loss; returns true when training
    /// should stop after this epoch.
    bool observe(double val_loss);

    bool improved_last() const { return improved_last_; }
    int best_epoch() const { return best_epoch_; }
    double best_loss() const { return best_loss_; }
    int epochs_seen() const { return epoch_; }

private:
    int patience_;
    double min_improvement_;
    int epoch_ = 0;
    int best_epoch_ = 0;
    double best_loss_ = 0.0;
    int bad_epochs_ = 0;
    bool improved_last_ = false;
};

struct FoldResult {
    int fold_index = 0;
    double val_accuracy = 0.0;
    double val_loss = 0.0;
    int epochs_ran = 0;
    model::ModelParams final_params; ///< parameters from the best-val-loss epoch
};

/// Trains one model on (train, val): seeded init, per-epoch shuffled
/// mini-batches, Adam updates, early stopping on validation loss. Returns
/// the best-validation-epoch snapshot. DataError on empty inputs.
FoldResult train_one(const model::HqnnConfig& config, const TrainConfig& train_cfg,
                     const data::DesignMatrix& train, const data::DesignMatrix& val,
                     std::uint64_t seed, int fold_index = 0);

struct CvResult {
    std::vector<FoldResult> folds;
    double cv_accuracy_mean = 0.0;
};

/// Stratified k-fold CV over the training split; fold membership comes from
/// the splitter seeded with train_cfg.split_seed, per-fold training seeds
/// are derived from run_seed. Folds may train concurrently (`workers`);
/// results are identical for any worker count.
CvResult cross_validate(const model::HqnnConfig& config, const TrainConfig& train_cfg,
                        const data::DesignMatrix& training_split, std::uint64_t run_seed,
                        int workers = 1);

/// Refit on the full training split for a fixed epoch budget (no validation
/// data, no early stopping). Used for the final test-set model.
model::ModelParams train_full(const model::HqnnConfig& config, const TrainConfig& train_cfg,
                              const data::DesignMatrix& train, std::uint64_t seed,
                              int max_epochs);

/// Median of the folds' early-stop epochs (mean of the middle pair rounded
/// half away from zero for even counts), never below 1.
int median_epochs(const std::vector<FoldResult>& folds);

} // namespace hqnn::optim
