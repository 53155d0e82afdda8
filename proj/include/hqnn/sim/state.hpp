// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace hqnn::sim {

using Complex = std::complex<double>;

inline constexpr int kMinQubits = 1;
inline constexpr int kMaxQubits = 12;

/// Dense state vector over n qubits. Indexing is little-endian: bit q of a
/// basis index holds the value of qubit q, so |q1 q0> = |10> is index 1.
class QuantumState {
public:
    /// Prepares |0...0>. Throws ConfigError when n_qubits is outside [1, 12].
    explicit QuantumState(int n_qubits);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    double norm_squared() const noexcept;

    std::vector<Complex>& raw() noexcept { return amps_; }
    const std::vector<Complex>& raw() const noexcept { return amps_; }

private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

QuantumState init_zero(int n_qubits);

// Single-qubit gates. Rotation convention: R_A(theta) = exp(-i*theta*A/2),
// so <Z> after RY(theta)|0> equals cos(theta). Angles must be finite
// (NumericError otherwise); targets must be in range (std::out_of_range).
void apply_h(QuantumState& state, int target);
void apply_x(QuantumState& state, int target);
void apply_rx(QuantumState& state, double theta, int target);
void apply_ry(QuantumState& state, double theta, int target);
void apply_rz(QuantumState& state, double theta, int target);
/// Rot(alpha, beta, gamma) = RZ(gamma) . RY(beta) . RZ(alpha), rightmost first.
void apply_rot(QuantumState& state, double alpha, double beta, double gamma, int target);
/// S^dagger = diag(1, -i); used to pre-rotate for Y-basis sampling.
void apply_s_dagger(QuantumState& state, int target);

// Two-qubit gates; control != target enforced (std::out_of_range).
void apply_cnot(QuantumState& state, int control, int target);
void apply_cz(QuantumState& state, int control, int target);

/// One gate of a circuit held as data. Parameterized rotations reference
/// slots in an external parameter vector (Rot consumes three consecutive
/// slots); param_index < 0 means the fixed `angle` is used instead.
struct GateOp {
    enum class Kind : std::uint8_t { H, X, RX, RY, RZ, Rot, Cnot, Cz };
    Kind kind;
    int q0 = 0; ///< target for 1q gates, control for 2q gates
    int q1 = 0; ///< target for 2q gates
    int param_index = -1;
    double angle = 0.0;
};

/// Number of parameter slots a gate kind consumes (0 for fixed gates).
int param_arity(GateOp::Kind kind);

bool is_two_qubit(GateOp::Kind kind);

/// Executes a gate list against `state`, reading rotation angles from
/// `params` where ops carry parameter slots.
void apply_ops(QuantumState& state, std::span<const GateOp> ops, std::span<const double> params);

} // namespace hqnn::sim
