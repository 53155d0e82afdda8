// SPDX-License-Identifier: Apache-2.0
#include "hqnn/sim/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hqnn/errors.hpp"

namespace hqnn::sim {

namespace {

void check_target(const QuantumState& state, int target) {
    if (target < 0 || target >= state.n_qubits()) {
        throw std::out_of_range("qubit index " + std::to_string(target) + " out of range for " +
                                std::to_string(state.n_qubits()) + " qubits");
    }
}

void check_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw NumericError("gate angle must be finite");
    }
}

// applies [[u00 u01][u10 u11]] to every amplitude pair split on bit `target`
void apply_1q(QuantumState& state, int target, Complex u00, Complex u01, Complex u10, Complex u11) {
    auto& a = state.raw();
    const std::size_t stride = std::size_t{1} << target;
    const std::size_t dim = a.size();
    for (std::size_t base = 0; base < dim; base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = a[i];
            const Complex a1 = a[i + stride];
            a[i] = u00 * a0 + u01 * a1;
            a[i + stride] = u10 * a0 + u11 * a1;
        }
    }
}

} // namespace

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < kMinQubits || n_qubits > kMaxQubits) {
        throw ConfigError("qubit count must be in [" + std::to_string(kMinQubits) + ", " +
                          std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

double QuantumState::norm_squared() const noexcept {
    double total = 0.0;
    for (const Complex& a : amps_) {
        total += std::norm(a);
    }
    return total;
}

QuantumState init_zero(int n_qubits) { return QuantumState(n_qubits); }

void apply_h(QuantumState& state, int target) {
    check_target(state, target);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto& a = state.raw();
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < a.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = a[i];
            const Complex a1 = a[i + stride];
            a[i] = (a0 + a1) * inv_sqrt2;
            a[i + stride] = (a0 - a1) * inv_sqrt2;
        }
    }
}

void apply_x(QuantumState& state, int target) {
    check_target(state, target);
    auto& a = state.raw();
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < a.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            std::swap(a[i], a[i + stride]);
        }
    }
}

void apply_rx(QuantumState& state, double theta, int target) {
    check_target(state, target);
    check_angle(theta);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    apply_1q(state, target, Complex{c, 0.0}, Complex{0.0, -s}, Complex{0.0, -s}, Complex{c, 0.0});
}

void apply_ry(QuantumState& state, double theta, int target) {
    check_target(state, target);
    check_angle(theta);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    // real rotation matrix [[c -s][s c]]; specialized to skip complex products
    auto& a = state.raw();
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < a.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = a[i];
            const Complex a1 = a[i + stride];
            a[i] = c * a0 - s * a1;
            a[i + stride] = s * a0 + c * a1;
        }
    }
}

void apply_rz(QuantumState& state, double theta, int target) {
    check_target(state, target);
    check_angle(theta);
    const Complex phase0 = std::polar(1.0, -theta / 2.0);
    const Complex phase1 = std::polar(1.0, theta / 2.0);
    auto& a = state.raw();
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < a.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            a[i] *= phase0;
            a[i + stride] *= phase1;
        }
    }
}

void apply_rot(QuantumState& state, double alpha, double beta, double gamma, int target) {
    apply_rz(state, alpha, target);
    apply_ry(state, beta, target);
    apply_rz(state, gamma, target);
}

void apply_s_dagger(QuantumState& state, int target) {
    check_target(state, target);
    auto& a = state.raw();
    const std::size_t stride = std::size_t{1} << target;
    const Complex minus_i{0.0, -1.0};
    for (std::size_t base = 0; base < a.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            a[i + stride] *= minus_i;
        }
    }
}

void apply_cnot(QuantumState& state, int control, int target) {
    check_target(state, control);
    check_target(state, target);
    if (control == target) {
        throw std::out_of_range("control and target must differ");
    }
    auto& a = state.raw();
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            std::swap(a[i], a[i | tbit]);
        }
    }
}

void apply_cz(QuantumState& state, int control, int target) {
    check_target(state, control);
    check_target(state, target);
    if (control == target) {
        throw std::out_of_range("control and target must differ");
    }
    auto& a = state.raw();
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & mask) == mask) {
            a[i] = -a[i];
        }
    }
}

int param_arity(GateOp::Kind kind) {
    switch (kind) {
    case GateOp::Kind::RX:
    case GateOp::Kind::RY:
    case GateOp::Kind::RZ:
        return 1;
    case GateOp::Kind::Rot:
        return 3;
    default:
        return 0;
    }
}

bool is_two_qubit(GateOp::Kind kind) {
    return kind == GateOp::Kind::Cnot || kind == GateOp::Kind::Cz;
}

void apply_ops(QuantumState& state, std::span<const GateOp> ops, std::span<const double> params) {
    for (const GateOp& op : ops) {
        const int arity = param_arity(op.kind);
        double angle[3] = {op.angle, 0.0, 0.0};
        if (op.param_index >= 0) {
            if (static_cast<std::size_t>(op.param_index) + arity > params.size()) {
                throw std::invalid_argument("gate parameter slot out of range");
            }
            for (int k = 0; k < arity; ++k) {
                angle[k] = params[static_cast<std::size_t>(op.param_index) + k];
            }
        }
        switch (op.kind) {
        case GateOp::Kind::H:
            apply_h(state, op.q0);
            break;
        case GateOp::Kind::X:
            apply_x(state, op.q0);
            break;
        case GateOp::Kind::RX:
            apply_rx(state, angle[0], op.q0);
            break;
        case GateOp::Kind::RY:
            apply_ry(state, angle[0], op.q0);
            break;
        case GateOp::Kind::RZ:
            apply_rz(state, angle[0], op.q0);
            break;
        case GateOp::Kind::Rot:
            apply_rot(state, angle[0], angle[1], angle[2], op.q0);
            break;
        case GateOp::Kind::Cnot:
            apply_cnot(state, op.q0, op.q1);
            break;
        case GateOp::Kind::Cz:
            apply_cz(state, op.q0, op.q1);
            break;
        }
    }
}

} // namespace hqnn::sim
