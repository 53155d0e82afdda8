// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace hqnn::optim {

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// First and second moment accumulators, sized on first use.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

/// Standard Adam update with bias correction, step count t >= 1.
/// std::invalid_argument on shape mismatch.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, long t,
               const AdamConfig& config);

} // namespace hqnn::optim
