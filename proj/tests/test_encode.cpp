// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hqnn/encode/encode.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"
#include "hqnn/sim/observable.hpp"

using namespace hqnn;
using encode::EncodingKind;
using sim::ObservableKind;

namespace {

std::vector<double> random_features(std::uint64_t seed) {
    rng::SplitMix64 gen(seed);
    std::vector<double> x(encode::kFeatureCount);
    for (double& v : x) {
        v = gen.next_double();
    }
    return x;
}

std::vector<double> z_profile(const sim::QuantumState& state) {
    std::vector<double> z(static_cast<std::size_t>(state.n_qubits()));
    for (int q = 0; q < state.n_qubits(); ++q) {
        z[static_cast<std::size_t>(q)] = expectation(state, {ObservableKind::PauliZ, q});
    }
    return z;
}

double marginal_one_probability(const sim::QuantumState& state, int qubit) {
    const auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

} // namespace

TEST_SUITE("encode") {

TEST_CASE("qubit counts per encoding") {
    CHECK(encode::qubit_count(EncodingKind::Amplitude) == 3);
    CHECK(encode::qubit_count(EncodingKind::Angle) == 8);
    CHECK(encode::qubit_count(EncodingKind::Basis) == 8);
    CHECK(encode::qubit_count(EncodingKind::Iqp) == 8);
    CHECK(encode::qubit_count(EncodingKind::QSample) == 8);
}

TEST_CASE("amplitude encoding maps a unit vector to |000>") {
    const std::vector<double> x{1, 0, 0, 0, 0, 0, 0, 0};
    const sim::QuantumState state = encode::encode(EncodingKind::Amplitude, x);
    REQUIRE(state.n_qubits() == 3);
    CHECK(state.amplitudes()[0].real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("amplitude encoding normalizes and rejects the zero vector") {
    const std::vector<double> x{0.3, 0.1, 0.0, 0.4, 0.2, 0.9, 0.05, 0.6};
    const sim::QuantumState state = encode::encode(EncodingKind::Amplitude, x);
    double norm_x = 0.0;
    for (const double v : x) {
        norm_x += v * v;
    }
    norm_x = std::sqrt(norm_x);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(state.amplitudes()[i].real() == doctest::Approx(x[i] / norm_x).epsilon(1e-12));
    }
    const std::vector<double> zero(8, 0.0);
    CHECK_THROWS_AS(encode::encode(EncodingKind::Amplitude, zero), EncodingError);
}

TEST_CASE("feature validation") {
    std::vector<double> x(8, 0.5);
    x[3] = 1.2;
    CHECK_THROWS_AS(encode::encode(EncodingKind::Angle, x), ValidationError);
    x[3] = -0.1;
    CHECK_THROWS_AS(encode::encode(EncodingKind::Angle, x), ValidationError);
    x[3] = std::nan("");
    CHECK_THROWS_AS(encode::encode(EncodingKind::Angle, x), ValidationError);
    CHECK_THROWS_AS(encode::encode(EncodingKind::Angle, std::vector<double>(7, 0.5)),
                    ValidationError);
}

TEST_CASE("angle encoding of zeros is the all-zero state") {
    const sim::QuantumState state =
        encode::encode(EncodingKind::Angle, std::vector<double>(8, 0.0));
    for (const double z : z_profile(state)) {
        CHECK(z == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("angle encoding gives <Z_i> = cos(pi x_i)") {
    const auto x = random_features(21);
    const sim::QuantumState state = encode::encode(EncodingKind::Angle, x);
    const auto z = z_profile(state);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(z[i] == doctest::Approx(std::cos(std::numbers::pi * x[i])).epsilon(1e-10));
    }
}

TEST_CASE("basis encoding lands on a single computational basis state") {
    const std::vector<double> x{0.9, 0.1, 0.5, 0.49, 0.0, 1.0, 0.7, 0.2};
    const sim::QuantumState state = encode::encode(EncodingKind::Basis, x);
    std::size_t nonzero = 0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (std::norm(state.amplitudes()[i]) > 1e-18) {
            ++nonzero;
            index = i;
        }
    }
    CHECK(nonzero == 1);
    CHECK(std::abs(std::norm(state.amplitudes()[index]) - 1.0) < 1e-12);
    // threshold at 0.5: bits 0, 2, 5, 6 set
    CHECK(index == ((1u << 0) | (1u << 2) | (1u << 5) | (1u << 6)));
}

TEST_CASE("IQP with zero features is the uniform superposition") {
    const sim::QuantumState state =
        encode::encode(EncodingKind::Iqp, std::vector<double>(8, 0.0));
    for (int q = 0; q < 8; ++q) {
        CHECK(expectation(state, {ObservableKind::PauliX, q}) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    for (std::size_t i = 0; i < state.dim(); ++i) {
        CHECK(std::norm(state.amplitudes()[i]) == doctest::Approx(1.0 / 256.0).epsilon(1e-10));
    }
}

TEST_CASE("qsample loads Bernoulli marginals exactly") {
    std::vector<double> x(8, 0.0);
    x[2] = 0.25;
    const sim::QuantumState state = encode::encode(EncodingKind::QSample, x);
    CHECK(expectation(state, {ObservableKind::PauliZ, 2}) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(marginal_one_probability(state, 2) == doctest::Approx(0.25).epsilon(1e-9));

    const auto random_x = random_features(77);
    const sim::QuantumState general = encode::encode(EncodingKind::QSample, random_x);
    for (int q = 0; q < 8; ++q) {
        // marginal-probability equality P(qubit q reads 1) == x_q
        CHECK(marginal_one_probability(general, q) ==
              doctest::Approx(random_x[static_cast<std::size_t>(q)]).epsilon(1e-9));
        // direct state computation: <Z_q> = 1 - 2 x_q
        CHECK(expectation(general, {ObservableKind::PauliZ, q}) ==
              doctest::Approx(1.0 - 2.0 * random_x[static_cast<std::size_t>(q)]).epsilon(1e-9));
    }
}

TEST_CASE("every encoder output is normalized") {
    for (const auto kind : {EncodingKind::Amplitude, EncodingKind::Angle, EncodingKind::Basis,
                            EncodingKind::Iqp, EncodingKind::QSample}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto x = random_features(rng::derive(1000, "norm", trial));
            const sim::QuantumState state = encode::encode(kind, x);
            CHECK(std::abs(state.norm_squared() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("angle and qsample act independently per qubit") {
    // permuting features permutes the per-qubit <Z> profile identically
    for (const auto kind : {EncodingKind::Angle, EncodingKind::QSample}) {
        const auto x = random_features(5);
        std::vector<double> rotated(x);
        std::rotate(rotated.begin(), rotated.begin() + 3, rotated.end());

        const auto z = z_profile(encode::encode(kind, x));
        const auto z_rotated = z_profile(encode::encode(kind, rotated));
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(z_rotated[i] == doctest::Approx(z[(i + 3) % x.size()]).epsilon(1e-10));
        }
    }
}

TEST_CASE("encoding token round trip") {
    for (const auto kind : {EncodingKind::Amplitude, EncodingKind::Angle, EncodingKind::Basis,
                            EncodingKind::Iqp, EncodingKind::QSample}) {
        CHECK(encode::encoding_from_string(encode::to_string(kind)) == kind);
    }
    CHECK(!encode::encoding_from_string("hexagon").has_value());
}

} // TEST_SUITE
