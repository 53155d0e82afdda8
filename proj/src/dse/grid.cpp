// SPDX-License-Identifier: Apache-2.0
#include "hqnn/dse/grid.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "hqnn/data/csv.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace hqnn::dse {

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        const auto begin = token.find_first_not_of(" \t");
        const auto end = token.find_last_not_of(" \t");
        if (begin != std::string::npos) {
            tokens.push_back(token.substr(begin, end - begin + 1));
        }
    }
    return tokens;
}

std::string capitalize_token(std::string token) {
    bool upper_next = true;
    for (char& c : token) {
        if (upper_next && std::isalpha(static_cast<unsigned char>(c))) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            upper_next = false;
        } else if (c == '-') {
            upper_next = true;
        }
    }
    return token;
}

template <typename T>
T parse_numeric(const std::string& value, const std::string& key) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("grid spec: bad numeric value for " + key + ": " + value);
    }
    return out;
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return out;
    } catch (const std::exception&) {
        throw ConfigError("grid spec: bad numeric value for " + key + ": " + value);
    }
}

} // namespace

GridSpec GridSpec::defaults() {
    GridSpec spec;
    spec.encodings = {encode::EncodingKind::Amplitude, encode::EncodingKind::Angle,
                      encode::EncodingKind::Basis, encode::EncodingKind::Iqp,
                      encode::EncodingKind::QSample};
    spec.architectures = {ansatz::ArchitectureKind::Basic, ansatz::ArchitectureKind::Ring,
                          ansatz::ArchitectureKind::Star, ansatz::ArchitectureKind::Strong,
                          ansatz::ArchitectureKind::Alternating};
    spec.measurements = {model::MeasurementKind::PauliX, model::MeasurementKind::PauliY,
                         model::MeasurementKind::PauliZ, model::MeasurementKind::PauliXYZ,
                         model::MeasurementKind::Hadamard};
    for (const int shots : {50, 100, 150, 200, 400}) {
        spec.shot_levels.push_back(sim::ShotPlan::finite(shots, 0));
    }
    return spec;
}

std::string shots_token(const sim::ShotPlan& plan) {
    return plan.is_analytic() ? "analytic" : std::to_string(plan.shots);
}

sim::ShotPlan parse_shots_token(const std::string& token) {
    if (token == "analytic") {
        return sim::ShotPlan::analytic();
    }
    int shots = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), shots);
    if (ec != std::errc{} || ptr != token.data() + token.size() || shots < 1) {
        throw ConfigError("shots must be a positive integer or 'analytic', got '" + token + "'");
    }
    return sim::ShotPlan::finite(shots, 0);
}

GridSpec GridSpec::from_file(const std::string& path) {
    GridSpec spec = defaults();
    for (const auto& [key, value] : data::read_kv_file(path)) {
        if (key == "encodings") {
            spec.encodings.clear();
            for (const auto& token : split_list(value)) {
                const auto kind = encode::encoding_from_string(token);
                if (!kind) {
                    throw ConfigError("grid spec: unknown encoding '" + token + "'");
                }
                spec.encodings.push_back(*kind);
            }
        } else if (key == "architectures") {
            spec.architectures.clear();
            for (const auto& token : split_list(value)) {
                const auto kind = ansatz::architecture_from_string(token);
                if (!kind) {
                    throw ConfigError("grid spec: unknown architecture '" + token + "'");
                }
                spec.architectures.push_back(*kind);
            }
        } else if (key == "measurements") {
            spec.measurements.clear();
            for (const auto& token : split_list(value)) {
                const auto kind = model::measurement_from_string(token);
                if (!kind) {
                    throw ConfigError("grid spec: unknown measurement '" + token + "'");
                }
                spec.measurements.push_back(*kind);
            }
        } else if (key == "shots") {
            spec.shot_levels.clear();
            for (const auto& token : split_list(value)) {
                spec.shot_levels.push_back(parse_shots_token(token));
            }
        } else if (key == "epochs") {
            spec.train.epochs = parse_numeric<int>(value, key);
        } else if (key == "batch_size") {
            spec.train.batch_size = parse_numeric<int>(value, key);
        } else if (key == "learning_rate") {
            spec.train.adam.learning_rate = parse_double(value, key);
        } else if (key == "patience") {
            spec.train.patience = parse_numeric<int>(value, key);
        } else if (key == "folds") {
            spec.train.folds = parse_numeric<int>(value, key);
        } else if (key == "split_seed") {
            spec.train.split_seed = parse_numeric<std::uint64_t>(value, key);
        } else if (key == "base_seed") {
            spec.base_seed = parse_numeric<std::uint64_t>(value, key);
        } else {
            throw ConfigError("grid spec: unknown key '" + key + "'");
        }
    }
    if (spec.encodings.empty() || spec.architectures.empty() || spec.measurements.empty() ||
        spec.shot_levels.empty()) {
        throw ConfigError("grid spec: every factor needs at least one level");
    }
    return spec;
}

std::string config_run_id(const model::HqnnConfig& config) {
    std::ostringstream out;
    out << encode::to_string(config.encoding) << "/" << ansatz::to_string(config.architecture)
        << "/" << model::to_string(config.measurement) << "/" << shots_token(config.shot_plan);
    return out.str();
}

std::string config_display(const model::HqnnConfig& config) {
    const auto display_encoding = [&]() -> std::string {
        switch (config.encoding) {
        case encode::EncodingKind::Iqp:
            return "IQP";
        case encode::EncodingKind::QSample:
            return "QSample";
        default:
            return capitalize_token(std::string(encode::to_string(config.encoding)));
        }
    };
    const auto display_measurement = [&]() -> std::string {
        if (config.measurement == model::MeasurementKind::PauliXYZ) {
            return "Pauli-XYZ";
        }
        return capitalize_token(std::string(model::to_string(config.measurement)));
    };
    std::ostringstream out;
    out << display_encoding() << " / "
        << capitalize_token(std::string(ansatz::to_string(config.architecture))) << " / "
        << display_measurement() << " / " << shots_token(config.shot_plan);
    return out.str();
}

std::vector<PlannedRun> enumerate_grid(const GridSpec& spec) {
    if (spec.encodings.empty() || spec.architectures.empty() || spec.measurements.empty() ||
        spec.shot_levels.empty()) {
        throw ConfigError("grid enumeration: every factor needs at least one level");
    }
    std::vector<PlannedRun> runs;
    runs.reserve(spec.encodings.size() * spec.architectures.size() * spec.measurements.size() *
                 spec.shot_levels.size());
    int index = 0;
    for (const auto encoding : spec.encodings) {
        for (const auto architecture : spec.architectures) {
            for (const auto measurement : spec.measurements) {
                for (const auto& shots : spec.shot_levels) {
                    PlannedRun run;
                    run.config.encoding = encoding;
                    run.config.architecture = architecture;
                    run.config.measurement = measurement;
                    run.config.shot_plan = shots;
                    run.run_id = config_run_id(run.config);
                    run.run_index = index++;
                    run.seed = rng::derive(spec.base_seed, run.run_id);
                    runs.push_back(std::move(run));
                }
            }
        }
    }
    return runs;
}

} // namespace hqnn::dse
