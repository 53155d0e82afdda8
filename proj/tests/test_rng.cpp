// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <set>

#include "hqnn/rng.hpp"

using namespace hqnn;

TEST_SUITE("rng") {

TEST_CASE("streams are deterministic per seed") {
    rng::SplitMix64 a(1234);
    rng::SplitMix64 b(1234);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next() == b.next());
    }
    rng::SplitMix64 c(1235);
    CHECK(rng::SplitMix64(1234).next() != c.next());
}

TEST_CASE("doubles land in [0, 1)") {
    rng::SplitMix64 gen(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = gen.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_below stays under the bound") {
    rng::SplitMix64 gen(9);
    for (int i = 0; i < 1000; ++i) {
        CHECK(gen.next_below(17) < 17);
    }
}

TEST_CASE("derived seeds differ per tag and counter") {
    std::set<std::uint64_t> seen;
    seen.insert(rng::derive(42, "a"));
    seen.insert(rng::derive(42, "b"));
    seen.insert(rng::derive(42, "a", 0));
    seen.insert(rng::derive(42, "a", 1));
    seen.insert(rng::derive(43, "a"));
    CHECK(seen.size() == 5);
    CHECK(rng::derive(42, "a") == rng::derive(42, "a"));
}

TEST_CASE("gaussian moments are roughly standard") {
    rng::SplitMix64 gen(11);
    double sum = 0.0;
    double sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double g = gen.next_gaussian();
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.05);
}

} // TEST_SUITE
