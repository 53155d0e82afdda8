// SPDX-License-Identifier: Apache-2.0
#include "hqnn/ansatz/ansatz.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::ansatz {

namespace {

void check_shape(int n_qubits, int n_layers) {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits) {
        throw ConfigError("ansatz qubit count out of range: " + std::to_string(n_qubits));
    }
    if (n_layers < 1) {
        throw ConfigError("ansatz needs at least one layer");
    }
}

void emit_entanglers(std::vector<sim::GateOp>& ops, ArchitectureKind kind, int n, int layer) {
    using Kind = sim::GateOp::Kind;
    switch (kind) {
    case ArchitectureKind::Basic:
        for (int i = 0; i + 1 < n; ++i) {
            ops.push_back({Kind::Cnot, i, i + 1});
        }
        break;
    case ArchitectureKind::Ring:
        for (int i = 0; i + 1 < n; ++i) {
            ops.push_back({Kind::Cnot, i, i + 1});
        }
        if (n > 1) {
            ops.push_back({Kind::Cnot, n - 1, 0});
        }
        break;
    case ArchitectureKind::Star:
        for (int j = 1; j < n; ++j) {
            ops.push_back({Kind::Cnot, 0, j});
        }
        break;
    case ArchitectureKind::Strong:
        if (n > 1) {
            const int stride = 1 + (layer % (n - 1));
            for (int i = 0; i < n; ++i) {
                ops.push_back({Kind::Cnot, i, (i + stride) % n});
            }
        }
        break;
    case ArchitectureKind::Alternating: {
        const int first = (layer % 2 == 0) ? 0 : 1;
        for (int i = first; i + 1 < n; i += 2) {
            ops.push_back({Kind::Cnot, i, i + 1});
        }
        break;
    }
    }
}

} // namespace

std::string_view to_string(ArchitectureKind kind) {
    switch (kind) {
    case ArchitectureKind::Basic:
        return "basic";
    case ArchitectureKind::Ring:
        return "ring";
    case ArchitectureKind::Star:
        return "star";
    case ArchitectureKind::Strong:
        return "strong";
    case ArchitectureKind::Alternating:
        return "alternating";
    }
    return "?";
}

std::optional<ArchitectureKind> architecture_from_string(std::string_view token) {
    if (token == "basic") return ArchitectureKind::Basic;
    if (token == "ring") return ArchitectureKind::Ring;
    if (token == "star") return ArchitectureKind::Star;
    if (token == "strong") return ArchitectureKind::Strong;
    if (token == "alternating") return ArchitectureKind::Alternating;
    return std::nullopt;
}

int param_count(ArchitectureKind kind, int n_qubits, int n_layers) {
    check_shape(n_qubits, n_layers);
    const int per_qubit = (kind == ArchitectureKind::Strong) ? 3 : 1;
    return n_layers * n_qubits * per_qubit;
}

std::vector<sim::GateOp> circuit_ops(ArchitectureKind kind, int n_qubits, int n_layers) {
    check_shape(n_qubits, n_layers);
    using Kind = sim::GateOp::Kind;
    std::vector<sim::GateOp> ops;
    int slot = 0;
    for (int layer = 0; layer < n_layers; ++layer) {
        for (int q = 0; q < n_qubits; ++q) {
            if (kind == ArchitectureKind::Strong) {
                ops.push_back({Kind::Rot, q, 0, slot});
                slot += 3;
            } else {
                ops.push_back({Kind::RY, q, 0, slot});
                slot += 1;
            }
        }
        emit_entanglers(ops, kind, n_qubits, layer);
    }
    return ops;
}

void apply_ansatz(sim::QuantumState& state, ArchitectureKind kind, std::span<const double> params,
                  int n_layers) {
    const int expected = param_count(kind, state.n_qubits(), n_layers);
    if (params.size() != static_cast<std::size_t>(expected)) {
        throw std::invalid_argument("ansatz parameter count mismatch: expected " +
                                    std::to_string(expected) + ", got " +
                                    std::to_string(params.size()));
    }
    const auto ops = circuit_ops(kind, state.n_qubits(), n_layers);
    sim::apply_ops(state, ops, params);
}

std::vector<double> initial_params(ArchitectureKind kind, int n_qubits, std::uint64_t seed,
                                   int n_layers) {
    const int count = param_count(kind, n_qubits, n_layers);
    rng::SplitMix64 gen(seed);
    std::vector<double> params(static_cast<std::size_t>(count));
    for (double& p : params) {
        p = gen.next_uniform(0.0, std::numbers::pi);
    }
    return params;
}

} // namespace hqnn::ansatz
