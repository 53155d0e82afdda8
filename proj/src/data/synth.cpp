// SPDX-License-Identifier: Apache-2.0
#include "hqnn/data/synth.hpp"

#include <cmath>
#include <string>

#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::data {

RawTable synth_dataset(const SynthSpec& spec, int n, std::uint64_t seed) {
    if (n < 2 || spec.n_features < 1) {
        throw ValidationError("synthetic dataset needs n >= 2 rows and >= 1 feature");
    }
    if (spec.class1_fraction <= 0.0 || spec.class1_fraction >= 1.0) {
        throw ValidationError("class balance must lie strictly between 0 and 1");
    }
    const std::size_t d = static_cast<std::size_t>(spec.n_features);
    std::vector<double> mean0 = spec.mean0;
    std::vector<double> mean1 = spec.mean1;
    if (mean0.empty()) {
        mean0.assign(d, -spec.separation / 2.0);
    }
    if (mean1.empty()) {
        mean1.assign(d, spec.separation / 2.0);
    }
    if (mean0.size() != d || mean1.size() != d) {
        throw ValidationError("cluster means must match the feature count");
    }

    const long n1 = std::lround(static_cast<double>(n) * spec.class1_fraction);

    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (long i = 0; i < n1; ++i) {
        labels[static_cast<std::size_t>(i)] = 1;
    }
    rng::SplitMix64 order_gen(rng::derive(seed, "synth-order"));
    for (std::size_t i = labels.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(order_gen.next_below(i));
        std::swap(labels[i - 1], labels[j]);
    }

    RawTable table;
    table.label_column = spec.label_column;
    for (std::size_t c = 0; c < d; ++c) {
        table.feature_names.push_back("f" + std::to_string(c));
    }
    table.labels = labels;
    table.rows.reserve(static_cast<std::size_t>(n));
    rng::SplitMix64 gen(rng::derive(seed, "synth-values"));
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
        const auto& mean = labels[r] == 1 ? mean1 : mean0;
        std::vector<std::optional<double>> row;
        row.reserve(d);
        for (std::size_t c = 0; c < d; ++c) {
            row.emplace_back(mean[c] + spec.sigma * gen.next_gaussian());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace hqnn::data
