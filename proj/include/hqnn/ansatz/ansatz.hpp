// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hqnn/sim/state.hpp"

namespace hqnn::ansatz {

/// The five entanglement topologies. Every layer applies one parameterized
/// rotation per qubit (RY, or a three-angle Rot for Strong) followed by the
/// topology's entangler pattern:
///   Basic:       CNOT(i -> i+1) for i = 0..n-2
///   Ring:        Basic plus CNOT(n-1 -> 0)
///   Star:        CNOT(0 -> j) for j = 1..n-1
///   Strong:      CNOT(i -> (i + r) mod n) for all i, r = 1 + (layer mod (n-1))
///   Alternating: even layers pair (0,1),(2,3),...; odd layers (1,2),(3,4),...
enum class ArchitectureKind { Basic, Ring, Star, Strong, Alternating };

inline constexpr int kDefaultLayers = 5;

std::string_view to_string(ArchitectureKind kind);
std::optional<ArchitectureKind> architecture_from_string(std::string_view token);

/// Trainable parameter count: layers * qubits for the RY topologies,
/// layers * qubits * 3 for Strong.
int param_count(ArchitectureKind kind, int n_qubits, int n_layers = kDefaultLayers);

/// The fixed gate list for (kind, n_qubits, n_layers). Rotation ops carry
/// parameter slots laid out layer-by-layer, qubit-by-qubit.
std::vector<sim::GateOp> circuit_ops(ArchitectureKind kind, int n_qubits,
                                     int n_layers = kDefaultLayers);

/// Applies the ansatz in place. Throws std::invalid_argument when the
/// parameter vector length does not match param_count.
void apply_ansatz(sim::QuantumState& state, ArchitectureKind kind, std::span<const double> params,
                  int n_layers = kDefaultLayers);

/// Seeded uniform draw on [0, pi) per parameter slot.
std::vector<double> initial_params(ArchitectureKind kind, int n_qubits, std::uint64_t seed,
                                   int n_layers = kDefaultLayers);

} // namespace hqnn::ansatz
