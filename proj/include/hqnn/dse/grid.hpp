// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqnn/model/model.hpp"
#include "hqnn/optim/trainer.hpp"

namespace hqnn::dse {

/// The design grid: one ordered list per factor, the training protocol and
/// a base seed. Defaults are the full 5x5x5x5 sweep.
struct GridSpec {
    std::vector<encode::EncodingKind> encodings;
    std::vector<ansatz::ArchitectureKind> architectures;
    std::vector<model::MeasurementKind> measurements;
    std::vector<sim::ShotPlan> shot_levels;
    optim::TrainConfig train;
    std::uint64_t base_seed = 42;

    static GridSpec defaults();

    /// Plain-text key=value spec file; absent keys keep their defaults,
    /// unknown keys raise ConfigError. Shot tokens are positive integers or
    /// "analytic".
    static GridSpec from_file(const std::string& path);
};

/// One enumerated grid point. run_id is the canonical lowercase key
/// "<encoding>/<architecture>/<measurement>/<shots>"; the run seed is
/// derived from (base_seed, run_id) so it survives re-enumeration and
/// partial grids.
struct PlannedRun {
    model::HqnnConfig config;
    std::string run_id;
    int run_index = 0;
    std::uint64_t seed = 0;
};

std::string shots_token(const sim::ShotPlan& plan);          ///< "analytic" or the count
sim::ShotPlan parse_shots_token(const std::string& token);   ///< ConfigError on bad tokens

std::string config_run_id(const model::HqnnConfig& config);
/// Paper-style display form, e.g. "Angle / Strong / Pauli-Y / 400".
std::string config_display(const model::HqnnConfig& config);

/// Cartesian product in Algorithm-1 nesting order: encoding outermost,
/// then architecture, then measurement, shots innermost.
std::vector<PlannedRun> enumerate_grid(const GridSpec& spec);

} // namespace hqnn::dse
