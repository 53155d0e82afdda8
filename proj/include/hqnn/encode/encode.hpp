// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "hqnn/sim/state.hpp"

namespace hqnn::encode {

/// The five classical-to-quantum feature maps. Amplitude packs the eight
/// features into the 2^3 amplitudes of three qubits; the others use one
/// qubit per feature.
enum class EncodingKind { Amplitude, Angle, Basis, Iqp, QSample };

inline constexpr int kFeatureCount = 8;

int qubit_count(EncodingKind kind);

std::string_view to_string(EncodingKind kind);
std::optional<EncodingKind> encoding_from_string(std::string_view token);

/// Prepares the encoded state for one feature row. Features must be exactly
/// eight finite values in [0, 1] (ValidationError otherwise).
///
///  - Amplitude: amplitudes = x / ||x||_2 (EncodingError on all-zero input)
///  - Angle:     RY(pi * x_i) per qubit
///  - Basis:     X on qubit i iff x_i >= 0.5
///  - Iqp:       H on all qubits, RZ(pi * x_i) per qubit, then a ZZ phase
///               exp(-i * pi * x_i * x_{i+1} * Z(x)Z / 2) on each
///               ring-adjacent pair (i, i+1 mod 8)
///  - QSample:   RY(2 * asin(sqrt(x_i))) per qubit, so P(qubit i reads 1) = x_i
sim::QuantumState encode(EncodingKind kind, std::span<const double> features);

} // namespace hqnn::encode
