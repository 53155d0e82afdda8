// SPDX-License-Identifier: Apache-2.0
#include "hqnn/optim/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace hqnn::optim {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, long t,
               const AdamConfig& config) {
    if (params.size() != grads.size()) {
        throw std::invalid_argument("adam_step: parameter and gradient sizes differ");
    }
    if (t < 1) {
        throw std::invalid_argument("adam_step: step count must be >= 1");
    }
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    if (state.m.size() != params.size()) {
        throw std::invalid_argument("adam_step: moment state size mismatch");
    }

    const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
    const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grads[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bias1;
        const double v_hat = state.v[i] / bias2;
        params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
}

} // namespace hqnn::optim
