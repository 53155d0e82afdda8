// SPDX-License-Identifier: Apache-2.0
#include "hqnn/model/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::model {

namespace {

constexpr double kProbClamp = 1e-7;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

sim::Observable observable_for_slot(MeasurementKind measurement, int n_qubits, int slot) {
    switch (measurement) {
    case MeasurementKind::PauliX:
        return {sim::ObservableKind::PauliX, slot};
    case MeasurementKind::PauliY:
        return {sim::ObservableKind::PauliY, slot};
    case MeasurementKind::PauliZ:
        return {sim::ObservableKind::PauliZ, slot};
    case MeasurementKind::Hadamard:
        return {sim::ObservableKind::Hadamard, slot};
    case MeasurementKind::PauliXYZ: {
        static constexpr sim::ObservableKind kBases[] = {
            sim::ObservableKind::PauliX, sim::ObservableKind::PauliY, sim::ObservableKind::PauliZ};
        return {kBases[slot / n_qubits], slot % n_qubits};
    }
    }
    throw ConfigError("unknown measurement kind");
}

void check_params(const HqnnConfig& config, const ModelParams& params) {
    if (params.circuit.size() != static_cast<std::size_t>(config.circuit_param_count())) {
        throw std::invalid_argument("circuit parameter count mismatch");
    }
    if (params.head_weights.size() != static_cast<std::size_t>(config.feature_count())) {
        throw std::invalid_argument("head weight count mismatch");
    }
}

struct CircuitRun {
    const HqnnConfig* config;
    std::vector<sim::GateOp> ops;
    sim::QuantumState encoded;

    CircuitRun(const HqnnConfig& cfg, std::span<const double> features)
        : config(&cfg),
          ops(ansatz::circuit_ops(cfg.architecture, cfg.n_qubits(), cfg.n_layers)),
          encoded(encode::encode(cfg.encoding, features)) {}

    std::vector<double> measure(std::span<const double> circuit_params,
                                std::uint64_t eval_seed) const {
        sim::QuantumState state = encoded;
        sim::apply_ops(state, ops, circuit_params);
        return measure_features(state, config->measurement, config->shot_plan, eval_seed);
    }
};

double head_logit(const ModelParams& params, std::span<const double> features) {
    double z = params.head_bias;
    for (std::size_t j = 0; j < features.size(); ++j) {
        z += params.head_weights[j] * features[j];
    }
    return z;
}

} // namespace

std::string_view to_string(MeasurementKind kind) {
    switch (kind) {
    case MeasurementKind::PauliX:
        return "pauli-x";
    case MeasurementKind::PauliY:
        return "pauli-y";
    case MeasurementKind::PauliZ:
        return "pauli-z";
    case MeasurementKind::PauliXYZ:
        return "pauli-xyz";
    case MeasurementKind::Hadamard:
        return "hadamard";
    }
    return "?";
}

std::optional<MeasurementKind> measurement_from_string(std::string_view token) {
    if (token == "pauli-x") return MeasurementKind::PauliX;
    if (token == "pauli-y") return MeasurementKind::PauliY;
    if (token == "pauli-z") return MeasurementKind::PauliZ;
    if (token == "pauli-xyz") return MeasurementKind::PauliXYZ;
    if (token == "hadamard") return MeasurementKind::Hadamard;
    return std::nullopt;
}

ModelParams initial_params(const HqnnConfig& config, std::uint64_t seed) {
    ModelParams params;
    params.circuit = ansatz::initial_params(config.architecture, config.n_qubits(),
                                            rng::derive(seed, "circuit"), config.n_layers);
    params.head_weights.assign(static_cast<std::size_t>(config.feature_count()), 0.0);
    params.head_bias = 0.0;
    return params;
}

std::vector<double> pack_params(const ModelParams& params) {
    std::vector<double> flat;
    flat.reserve(params.circuit.size() + params.head_weights.size() + 1);
    flat.insert(flat.end(), params.circuit.begin(), params.circuit.end());
    flat.insert(flat.end(), params.head_weights.begin(), params.head_weights.end());
    flat.push_back(params.head_bias);
    return flat;
}

ModelParams unpack_params(const HqnnConfig& config, std::span<const double> flat) {
    const std::size_t n_circuit = static_cast<std::size_t>(config.circuit_param_count());
    const std::size_t n_head = static_cast<std::size_t>(config.feature_count());
    if (flat.size() != n_circuit + n_head + 1) {
        throw std::invalid_argument("flat parameter vector has wrong length");
    }
    ModelParams params;
    params.circuit.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n_circuit));
    params.head_weights.assign(flat.begin() + static_cast<std::ptrdiff_t>(n_circuit),
                               flat.begin() + static_cast<std::ptrdiff_t>(n_circuit + n_head));
    params.head_bias = flat.back();
    return params;
}

std::vector<double> measure_features(const sim::QuantumState& state, MeasurementKind measurement,
                                     const sim::ShotPlan& plan, std::uint64_t eval_seed) {
    const int n = state.n_qubits();
    const int count = measurement == MeasurementKind::PauliXYZ ? 3 * n : n;
    std::vector<double> features(static_cast<std::size_t>(count));
    for (int slot = 0; slot < count; ++slot) {
        const sim::Observable obs = observable_for_slot(measurement, n, slot);
        if (plan.is_analytic()) {
            features[static_cast<std::size_t>(slot)] = expectation(state, obs);
        } else {
            features[static_cast<std::size_t>(slot)] = sampled_expectation(
                state, obs, plan.with_seed(rng::derive(eval_seed, static_cast<std::uint64_t>(slot))));
        }
    }
    return features;
}

double forward(const HqnnConfig& config, const ModelParams& params,
               std::span<const double> features, std::uint64_t eval_seed) {
    check_params(config, params);
    const CircuitRun run(config, features);
    const std::vector<double> measured = run.measure(params.circuit, eval_seed);
    return sigmoid(head_logit(params, measured));
}

double bce_loss(double p, int label) {
    const double q = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    return label == 1 ? -std::log(q) : -std::log(1.0 - q);
}

Gradients gradient(const HqnnConfig& config, const ModelParams& params,
                   std::span<const SampleView> batch, std::uint64_t eval_seed) {
    check_params(config, params);
    if (batch.empty()) {
        throw std::invalid_argument("gradient requires a non-empty batch");
    }
    const std::size_t n_circuit = params.circuit.size();
    const std::size_t n_head = params.head_weights.size();

    Gradients grads;
    grads.circuit.assign(n_circuit, 0.0);
    grads.head_weights.assign(n_head, 0.0);
    grads.head_bias = 0.0;

    std::vector<double> shifted(params.circuit);
    for (std::size_t s = 0; s < batch.size(); ++s) {
        const SampleView& sample = batch[s];
        const std::uint64_t sample_seed = rng::derive(eval_seed, s);
        const CircuitRun run(config, sample.features);

        const std::vector<double> base =
            run.measure(params.circuit, rng::derive(sample_seed, "base"));
        const double p = sigmoid(head_logit(params, base));
        // d(BCE(sigmoid(z)))/dz = p - y
        const double dz = p - static_cast<double>(sample.label);

        for (std::size_t j = 0; j < n_head; ++j) {
            grads.head_weights[j] += dz * base[j];
        }
        grads.head_bias += dz;

        for (std::size_t k = 0; k < n_circuit; ++k) {
            const double original = shifted[k];
            shifted[k] = original + std::numbers::pi / 2.0;
            const std::vector<double> plus =
                run.measure(shifted, rng::derive(sample_seed, "shift+", k));
            shifted[k] = original - std::numbers::pi / 2.0;
            const std::vector<double> minus =
                run.measure(shifted, rng::derive(sample_seed, "shift-", k));
            shifted[k] = original;

            double chain = 0.0;
            for (std::size_t j = 0; j < n_head; ++j) {
                chain += params.head_weights[j] * (plus[j] - minus[j]) / 2.0;
            }
            grads.circuit[k] += dz * chain;
        }
    }

    const double inv = 1.0 / static_cast<double>(batch.size());
    for (double& g : grads.circuit) {
        g *= inv;
    }
    for (double& g : grads.head_weights) {
        g *= inv;
    }
    grads.head_bias *= inv;
    return grads;
}

EvalResult evaluate(const HqnnConfig& config, const ModelParams& params,
                    std::span<const SampleView> samples, std::uint64_t eval_seed) {
    check_params(config, params);
    if (samples.empty()) {
        throw std::invalid_argument("evaluate requires at least one sample");
    }
    EvalResult result;
    result.probabilities.reserve(samples.size());
    const auto ops = ansatz::circuit_ops(config.architecture, config.n_qubits(), config.n_layers);
    long correct = 0;
    double loss_sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        sim::QuantumState state = encode::encode(config.encoding, samples[i].features);
        sim::apply_ops(state, ops, params.circuit);
        const std::vector<double> measured = measure_features(
            state, config.measurement, config.shot_plan, rng::derive(eval_seed, i));
        const double p = sigmoid(head_logit(params, measured));
        result.probabilities.push_back(p);
        loss_sum += bce_loss(p, samples[i].label);
        const int predicted = p >= 0.5 ? 1 : 0;
        correct += predicted == samples[i].label ? 1 : 0;
    }
    result.mean_loss = loss_sum / static_cast<double>(samples.size());
    result.accuracy = static_cast<double>(correct) / static_cast<double>(samples.size());
    return result;
}

} // namespace hqnn::model
