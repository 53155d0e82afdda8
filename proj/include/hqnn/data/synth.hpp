// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqnn/data/table.hpp"

namespace hqnn::data {

/// Gaussian-mixture binary dataset spec. When the mean vectors are left
/// empty the classes sit at -separation/2 and +separation/2 on every axis,
/// which keeps them linearly separable for separation >> sigma.
struct SynthSpec {
    int n_features = 8;
    double class1_fraction = 0.625;
    std::vector<double> mean0;
    std::vector<double> mean1;
    double sigma = 0.25;
    double separation = 2.0;
    std::string label_column = "label";
};

/// Reproducible draw: same (spec, n, seed) gives an identical table.
/// Class 1 gets round(n * class1_fraction) rows; row order is shuffled.
RawTable synth_dataset(const SynthSpec& spec, int n, std::uint64_t seed);

} // namespace hqnn::data
