// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "hqnn/sim/state.hpp"

namespace hqnn::sim {

/// Single-qubit observable with eigenvalues +/-1. Hadamard denotes the
/// operator (X + Z)/sqrt(2).
enum class ObservableKind { PauliX, PauliY, PauliZ, Hadamard };

struct Observable {
    ObservableKind kind;
    int qubit;
};

/// Exact <psi|O|psi>. For the Hadamard kind this is (<X> + <Z>)/sqrt(2).
double expectation(const QuantumState& state, const Observable& obs);

/// Measurement budget for one expectation estimate. Finite plans are
/// deterministic for a fixed seed.
struct ShotPlan {
    enum class Mode { Analytic, Finite };
    Mode mode = Mode::Analytic;
    int shots = 0;
    std::uint64_t seed = 0;

    static ShotPlan analytic() { return {}; }
    static ShotPlan finite(int shots, std::uint64_t seed); ///< ConfigError if shots < 1
    bool is_analytic() const { return mode == Mode::Analytic; }
    ShotPlan with_seed(std::uint64_t s) const {
        ShotPlan p = *this;
        p.seed = s;
        return p;
    }
};

/// Shot-based estimate: rotates into the observable's eigenbasis (H for X,
/// S^dagger then H for Y), draws `shots` bitstrings from |amplitudes|^2 and
/// averages the +/-1 eigenvalues. The Hadamard kind estimates <X> and <Z>
/// with ceil(shots/2) each and combines them as (<X> + <Z>)/sqrt(2), so the
/// total circuit executions match the single-basis kinds; the combined
/// estimate is unbiased but can exceed |1| by shot noise.
/// Analytic plans are a contract violation (ConfigError).
double sampled_expectation(const QuantumState& state, const Observable& obs, const ShotPlan& plan);

} // namespace hqnn::sim
