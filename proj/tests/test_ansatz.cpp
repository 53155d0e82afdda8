// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "hqnn/ansatz/ansatz.hpp"
#include "hqnn/encode/encode.hpp"
#include "hqnn/rng.hpp"
#include "hqnn/sim/observable.hpp"

using namespace hqnn;
using ansatz::ArchitectureKind;
using sim::GateOp;

namespace {

int entangler_count(const std::vector<GateOp>& ops, int layer, int n_qubits, bool strong) {
    // rotation ops per layer: n (or n Rot ops for strong); entanglers follow
    int count = 0;
    int current_layer = -1;
    int rotations_seen = 0;
    for (const GateOp& op : ops) {
        if (op.kind == GateOp::Kind::RY || op.kind == GateOp::Kind::Rot) {
            if (rotations_seen % n_qubits == 0) {
                ++current_layer;
            }
            ++rotations_seen;
            (void)strong;
        } else if (current_layer == layer) {
            ++count;
        }
    }
    return count;
}

} // namespace

TEST_SUITE("ansatz") {

TEST_CASE("parameter counts match the topology") {
    CHECK(ansatz::param_count(ArchitectureKind::Basic, 3) == 15);
    CHECK(ansatz::param_count(ArchitectureKind::Ring, 8) == 40);
    CHECK(ansatz::param_count(ArchitectureKind::Star, 8) == 40);
    CHECK(ansatz::param_count(ArchitectureKind::Alternating, 8) == 40);
    CHECK(ansatz::param_count(ArchitectureKind::Strong, 3) == 45);
    CHECK(ansatz::param_count(ArchitectureKind::Strong, 8) == 120);
}

TEST_CASE("zero parameters leave |0...0> invariant") {
    for (const auto kind : {ArchitectureKind::Basic, ArchitectureKind::Ring,
                            ArchitectureKind::Star, ArchitectureKind::Strong,
                            ArchitectureKind::Alternating}) {
        sim::QuantumState state(8);
        const std::vector<double> params(
            static_cast<std::size_t>(ansatz::param_count(kind, 8)), 0.0);
        ansatz::apply_ansatz(state, kind, params);
        for (int q = 0; q < 8; ++q) {
            CHECK(expectation(state, {sim::ObservableKind::PauliZ, q}) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("parameter length mismatch is rejected") {
    sim::QuantumState state(3);
    CHECK_THROWS_AS(
        ansatz::apply_ansatz(state, ArchitectureKind::Basic, std::vector<double>(14, 0.0)),
        std::invalid_argument);
}

TEST_CASE("ring equals basic plus the closing CNOT at 2 qubits") {
    const auto params = ansatz::initial_params(ArchitectureKind::Basic, 2, 99);

    sim::QuantumState ring(2);
    apply_h(ring, 0);
    ansatz::apply_ansatz(ring, ArchitectureKind::Ring, params);

    sim::QuantumState basic_plus(2);
    apply_h(basic_plus, 0);
    // replay basic layer by layer, adding the wrap-around entangler by hand
    const auto ops = ansatz::circuit_ops(ArchitectureKind::Basic, 2);
    std::size_t i = 0;
    for (int layer = 0; layer < ansatz::kDefaultLayers; ++layer) {
        for (int q = 0; q < 2; ++q, ++i) {
            apply_ry(basic_plus, params[static_cast<std::size_t>(ops[i].param_index)],
                     ops[i].q0);
        }
        apply_cnot(basic_plus, 0, 1);
        ++i; // the basic entangler op
        apply_cnot(basic_plus, 1, 0);
    }
    for (std::size_t a = 0; a < ring.dim(); ++a) {
        CHECK(std::abs(ring.amplitudes()[a] - basic_plus.amplitudes()[a]) < 1e-12);
    }
}

TEST_CASE("strong strides walk 1..5 over the layers at 8 qubits") {
    const auto ops = ansatz::circuit_ops(ArchitectureKind::Strong, 8);
    std::vector<int> strides;
    int rotations_seen = 0;
    for (const GateOp& op : ops) {
        if (op.kind == GateOp::Kind::Rot) {
            ++rotations_seen;
        } else if (op.kind == GateOp::Kind::Cnot && op.q0 == 0 &&
                   rotations_seen % 8 == 0) {
            strides.push_back(op.q1);
        }
    }
    CHECK(strides == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("entangler counts per layer per topology") {
    const int n = 8;
    for (int layer = 0; layer < 5; ++layer) {
        CHECK(entangler_count(ansatz::circuit_ops(ArchitectureKind::Basic, n), layer, n,
                              false) == n - 1);
        CHECK(entangler_count(ansatz::circuit_ops(ArchitectureKind::Ring, n), layer, n,
                              false) == n);
        CHECK(entangler_count(ansatz::circuit_ops(ArchitectureKind::Star, n), layer, n,
                              false) == n - 1);
        CHECK(entangler_count(ansatz::circuit_ops(ArchitectureKind::Strong, n), layer, n,
                              true) == n);
        const int expected_alternating = layer % 2 == 0 ? n / 2 : (n - 1) / 2;
        CHECK(entangler_count(ansatz::circuit_ops(ArchitectureKind::Alternating, n), layer, n,
                              false) == expected_alternating);
    }
}

TEST_CASE("circuit structure is a pure function of its shape") {
    for (const auto kind : {ArchitectureKind::Basic, ArchitectureKind::Ring,
                            ArchitectureKind::Star, ArchitectureKind::Strong,
                            ArchitectureKind::Alternating}) {
        const auto first = ansatz::circuit_ops(kind, 8);
        const auto second = ansatz::circuit_ops(kind, 8);
        REQUIRE(first.size() == second.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i].kind == second[i].kind);
            CHECK(first[i].q0 == second[i].q0);
            CHECK(first[i].q1 == second[i].q1);
            CHECK(first[i].param_index == second[i].param_index);
        }
    }
}

TEST_CASE("initial parameters are uniform on [0, pi) and reproducible") {
    const auto params = ansatz::initial_params(ArchitectureKind::Ring, 8, 2024);
    CHECK(params == ansatz::initial_params(ArchitectureKind::Ring, 8, 2024));
    for (const double p : params) {
        CHECK(p >= 0.0);
        CHECK(p < std::numbers::pi);
    }
    CHECK(params != ansatz::initial_params(ArchitectureKind::Ring, 8, 2025));
}

TEST_CASE("gradient non-degeneracy smoke test") {
    // at least one parameter-shift component moves an expectation value
    for (const auto kind : {ArchitectureKind::Basic, ArchitectureKind::Ring,
                            ArchitectureKind::Star, ArchitectureKind::Strong,
                            ArchitectureKind::Alternating}) {
        std::vector<double> features(8);
        rng::SplitMix64 gen(rng::derive(606, ansatz::to_string(kind)));
        for (double& f : features) {
            f = gen.next_double();
        }
        auto params = ansatz::initial_params(kind, 8, 707);

        const auto z0_at = [&](const std::vector<double>& p) {
            sim::QuantumState state = encode::encode(encode::EncodingKind::Angle, features);
            ansatz::apply_ansatz(state, kind, p);
            return expectation(state, {sim::ObservableKind::PauliZ, 0});
        };

        double max_abs_gradient = 0.0;
        for (std::size_t k = 0; k < params.size(); ++k) {
            const double original = params[k];
            params[k] = original + std::numbers::pi / 2.0;
            const double plus = z0_at(params);
            params[k] = original - std::numbers::pi / 2.0;
            const double minus = z0_at(params);
            params[k] = original;
            max_abs_gradient = std::max(max_abs_gradient, std::abs((plus - minus) / 2.0));
        }
        CHECK(max_abs_gradient > 1e-6);
    }
}

} // TEST_SUITE
