// SPDX-License-Identifier: Apache-2.0
#include "hqnn/encode/encode.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hqnn/errors.hpp"

namespace hqnn::encode {

namespace {

void validate_features(std::span<const double> features) {
    if (features.size() != static_cast<std::size_t>(kFeatureCount)) {
        throw ValidationError("expected exactly " + std::to_string(kFeatureCount) +
                              " features, got " + std::to_string(features.size()));
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (!std::isfinite(features[i])) {
            throw ValidationError("feature " + std::to_string(i) + " is not finite");
        }
        if (features[i] < 0.0 || features[i] > 1.0) {
            throw ValidationError("feature " + std::to_string(i) + " = " +
                                  std::to_string(features[i]) + " outside [0, 1]");
        }
    }
}

sim::QuantumState encode_amplitude(std::span<const double> x) {
    double norm_sq = 0.0;
    for (const double v : x) {
        norm_sq += v * v;
    }
    if (norm_sq <= 0.0) {
        throw EncodingError("amplitude encoding requires a non-zero feature vector");
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    sim::QuantumState state(3);
    auto& amps = state.raw();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = sim::Complex{x[i] * inv_norm, 0.0};
    }
    return state;
}

sim::QuantumState encode_angle(std::span<const double> x) {
    sim::QuantumState state(kFeatureCount);
    for (int q = 0; q < kFeatureCount; ++q) {
        apply_ry(state, std::numbers::pi * x[static_cast<std::size_t>(q)], q);
    }
    return state;
}

sim::QuantumState encode_basis(std::span<const double> x) {
    sim::QuantumState state(kFeatureCount);
    for (int q = 0; q < kFeatureCount; ++q) {
        if (x[static_cast<std::size_t>(q)] >= 0.5) {
            apply_x(state, q);
        }
    }
    return state;
}

sim::QuantumState encode_iqp(std::span<const double> x) {
    sim::QuantumState state(kFeatureCount);
    for (int q = 0; q < kFeatureCount; ++q) {
        apply_h(state, q);
    }
    for (int q = 0; q < kFeatureCount; ++q) {
        apply_rz(state, std::numbers::pi * x[static_cast<std::size_t>(q)], q);
    }
    // CNOT . RZ(theta) on target . CNOT realizes exp(-i * theta * ZZ / 2)
    for (int q = 0; q < kFeatureCount; ++q) {
        const int next = (q + 1) % kFeatureCount;
        const double theta =
            std::numbers::pi * x[static_cast<std::size_t>(q)] * x[static_cast<std::size_t>(next)];
        apply_cnot(state, q, next);
        apply_rz(state, theta, next);
        apply_cnot(state, q, next);
    }
    return state;
}

sim::QuantumState encode_qsample(std::span<const double> x) {
    sim::QuantumState state(kFeatureCount);
    for (int q = 0; q < kFeatureCount; ++q) {
        apply_ry(state, 2.0 * std::asin(std::sqrt(x[static_cast<std::size_t>(q)])), q);
    }
    return state;
}

} // namespace

int qubit_count(EncodingKind kind) { return kind == EncodingKind::Amplitude ? 3 : kFeatureCount; }

std::string_view to_string(EncodingKind kind) {
    switch (kind) {
    case EncodingKind::Amplitude:
        return "amplitude";
    case EncodingKind::Angle:
        return "angle";
    case EncodingKind::Basis:
        return "basis";
    case EncodingKind::Iqp:
        return "iqp";
    case EncodingKind::QSample:
        return "qsample";
    }
    return "?";
}

std::optional<EncodingKind> encoding_from_string(std::string_view token) {
    if (token == "amplitude") return EncodingKind::Amplitude;
    if (token == "angle") return EncodingKind::Angle;
    if (token == "basis") return EncodingKind::Basis;
    if (token == "iqp") return EncodingKind::Iqp;
    if (token == "qsample") return EncodingKind::QSample;
    return std::nullopt;
}

sim::QuantumState encode(EncodingKind kind, std::span<const double> features) {
    validate_features(features);
    switch (kind) {
    case EncodingKind::Amplitude:
        return encode_amplitude(features);
    case EncodingKind::Angle:
        return encode_angle(features);
    case EncodingKind::Basis:
        return encode_basis(features);
    case EncodingKind::Iqp:
        return encode_iqp(features);
    case EncodingKind::QSample:
        return encode_qsample(features);
    }
    throw ConfigError("unknown encoding kind");
}

} // namespace hqnn::encode
