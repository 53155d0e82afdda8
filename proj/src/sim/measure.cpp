// SPDX-License-Identifier: Apache-2.0
#include "hqnn/sim/observable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::sim {

namespace {

void check_qubit(const QuantumState& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw std::out_of_range("observable qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.n_qubits()) +
                                " qubits");
    }
}

double expectation_z(const QuantumState& state, int qubit) {
    const auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << qubit;
    double total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        total += (i & bit) ? -p : p;
    }
    return total;
}

// <X_q> = 2 sum Re(conj(a0) a1), <Y_q> = 2 sum Im(conj(a0) a1) over pairs
// split on bit q.
double expectation_x(const QuantumState& state, int qubit) {
    const auto amps = state.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    double total = 0.0;
    for (std::size_t base = 0; base < amps.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            total += std::real(std::conj(amps[i]) * amps[i + stride]);
        }
    }
    return 2.0 * total;
}

double expectation_y(const QuantumState& state, int qubit) {
    const auto amps = state.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    double total = 0.0;
    for (std::size_t base = 0; base < amps.size(); base += stride << 1) {
        for (std::size_t i = base; i < base + stride; ++i) {
            total += std::imag(std::conj(amps[i]) * amps[i + stride]);
        }
    }
    return 2.0 * total;
}

/// Rotates a copy of the state into the Z eigenbasis of the requested Pauli,
/// then samples bitstrings from |amplitudes|^2 and averages +/-1 outcomes.
double sample_pauli(const QuantumState& state, ObservableKind kind, int qubit, int shots,
                    std::uint64_t seed) {
    QuantumState rotated = state;
    if (kind == ObservableKind::PauliX) {
        apply_h(rotated, qubit);
    } else if (kind == ObservableKind::PauliY) {
        apply_s_dagger(rotated, qubit);
        apply_h(rotated, qubit);
    }

    const auto amps = rotated.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0); // absorb rounding so every draw lands

    rng::SplitMix64 gen(seed);
    const std::size_t bit = std::size_t{1} << qubit;
    long sum = 0;
    for (int s = 0; s < shots; ++s) {
        const double u = gen.next_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t index = static_cast<std::size_t>(it - cdf.begin());
        sum += (index & bit) ? -1 : 1;
    }
    return static_cast<double>(sum) / static_cast<double>(shots);
}

} // namespace

double expectation(const QuantumState& state, const Observable& obs) {
    check_qubit(state, obs.qubit);
    switch (obs.kind) {
    case ObservableKind::PauliX:
        return expectation_x(state, obs.qubit);
    case ObservableKind::PauliY:
        return expectation_y(state, obs.qubit);
    case ObservableKind::PauliZ:
        return expectation_z(state, obs.qubit);
    case ObservableKind::Hadamard:
        return (expectation_x(state, obs.qubit) + expectation_z(state, obs.qubit)) /
               std::sqrt(2.0);
    }
    throw ConfigError("unknown observable kind");
}

ShotPlan ShotPlan::finite(int shots, std::uint64_t seed) {
    if (shots < 1) {
        throw ConfigError("shot count must be positive, got " + std::to_string(shots));
    }
    return ShotPlan{Mode::Finite, shots, seed};
}

double sampled_expectation(const QuantumState& state, const Observable& obs,
                           const ShotPlan& plan) {
    check_qubit(state, obs.qubit);
    if (plan.is_analytic()) {
        throw ConfigError("sampled_expectation requires a finite shot plan; "
                          "use expectation() for analytic evaluation");
    }
    if (obs.kind == ObservableKind::Hadamard) {
        const int half = (plan.shots + 1) / 2;
        const double ex = sample_pauli(state, ObservableKind::PauliX, obs.qubit, half,
                                       rng::derive(plan.seed, "hadamard-x"));
        const double ez = sample_pauli(state, ObservableKind::PauliZ, obs.qubit, half,
                                       rng::derive(plan.seed, "hadamard-z"));
        return (ex + ez) / std::sqrt(2.0);
    }
    return sample_pauli(state, obs.kind, obs.qubit, plan.shots, plan.seed);
}

} // namespace hqnn::sim
