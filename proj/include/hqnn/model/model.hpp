// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hqnn/ansatz/ansatz.hpp"
#include "hqnn/encode/encode.hpp"
#include "hqnn/sim/observable.hpp"

namespace hqnn::model {

/// Readout strategy: one expectation per qubit, or the X/Y/Z concatenation
/// for PauliXYZ (feature vector of length 3n).
enum class MeasurementKind { PauliX, PauliY, PauliZ, PauliXYZ, Hadamard };

std::string_view to_string(MeasurementKind kind);
std::optional<MeasurementKind> measurement_from_string(std::string_view token);

/// One grid point: encoding, entanglement topology, measurement and shot
/// budget. Qubit count and feature width follow from the encoding.
struct HqnnConfig {
    encode::EncodingKind encoding = encode::EncodingKind::Angle;
    ansatz::ArchitectureKind architecture = ansatz::ArchitectureKind::Ring;
    MeasurementKind measurement = MeasurementKind::PauliZ;
    sim::ShotPlan shot_plan = sim::ShotPlan::analytic();
    int n_layers = ansatz::kDefaultLayers;

    int n_qubits() const { return encode::qubit_count(encoding); }
    int feature_count() const {
        return measurement == MeasurementKind::PauliXYZ ? 3 * n_qubits() : n_qubits();
    }
    int circuit_param_count() const {
        return ansatz::param_count(architecture, n_qubits(), n_layers);
    }
};

/// Circuit angles plus the linear classifier head, trained jointly.
struct ModelParams {
    std::vector<double> circuit;
    std::vector<double> head_weights;
    double head_bias = 0.0;
};

/// Circuit angles uniform on [0, pi); head weights and bias start at zero.
ModelParams initial_params(const HqnnConfig& config, std::uint64_t seed);

// Flat layout [circuit..., head_weights..., head_bias] used by the optimizer.
std::vector<double> pack_params(const ModelParams& params);
ModelParams unpack_params(const HqnnConfig& config, std::span<const double> flat);

/// Per-qubit expectations of the configured observable, in qubit order;
/// PauliXYZ returns [<X_0>.., <Y_0>.., <Z_0>..]. Finite shot plans get a
/// distinct sub-seed per feature slot, derived from eval_seed.
std::vector<double> measure_features(const sim::QuantumState& state, MeasurementKind measurement,
                                     const sim::ShotPlan& plan, std::uint64_t eval_seed);

/// p = sigmoid(head_weights . measure_features(ansatz(encode(x))) + head_bias).
double forward(const HqnnConfig& config, const ModelParams& params,
               std::span<const double> features, std::uint64_t eval_seed = 0);

/// Binary cross-entropy with the probability clamped to [1e-7, 1 - 1e-7].
double bce_loss(double p, int label);

struct SampleView {
    std::span<const double> features;
    int label;
};

struct Gradients {
    std::vector<double> circuit;
    std::vector<double> head_weights;
    double head_bias = 0.0;
};

/// Mean batch gradient. Head gradients are analytic through the sigmoid;
/// each circuit angle is differentiated with the parameter-shift rule
/// (E(theta + pi/2) - E(theta - pi/2)) / 2 per measured feature, chained
/// through the head. Shot plans are honored with fresh sub-seeds per sample
/// and per shifted evaluation.
Gradients gradient(const HqnnConfig& config, const ModelParams& params,
                   std::span<const SampleView> batch, std::uint64_t eval_seed = 0);

struct EvalResult {
    std::vector<double> probabilities;
    double mean_loss = 0.0;
    double accuracy = 0.0; ///< at decision threshold 0.5
};

EvalResult evaluate(const HqnnConfig& config, const ModelParams& params,
                    std::span<const SampleView> samples, std::uint64_t eval_seed = 0);

} // namespace hqnn::model
