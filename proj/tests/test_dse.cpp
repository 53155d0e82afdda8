// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "hqnn/data/preprocess.hpp"
#include "hqnn/data/synth.hpp"
#include "hqnn/dse/aggregate.hpp"
#include "hqnn/dse/sweep.hpp"
#include "hqnn/errors.hpp"

using namespace hqnn;
using dse::Factor;
using dse::GridSpec;
using dse::RunRecord;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

int run_index_of(const std::string& run_id) {
    static const std::vector<dse::PlannedRun> grid = dse::enumerate_grid(GridSpec::defaults());
    for (const auto& run : grid) {
        if (run.run_id == run_id) {
            return run.run_index;
        }
    }
    REQUIRE_MESSAGE(false, "run_id not in the default grid: " << run_id);
    return -1;
}

model::HqnnConfig config_of(const std::string& run_id) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    // measurement tokens contain no '/', so a plain split works
    while (true) {
        const auto slash = run_id.find('/', begin);
        if (slash == std::string::npos) {
            parts.push_back(run_id.substr(begin));
            break;
        }
        parts.push_back(run_id.substr(begin, slash - begin));
        begin = slash + 1;
    }
    REQUIRE(parts.size() == 4);
    model::HqnnConfig config;
    config.encoding = *encode::encoding_from_string(parts[0]);
    config.architecture = *ansatz::architecture_from_string(parts[1]);
    config.measurement = *model::measurement_from_string(parts[2]);
    config.shot_plan = dse::parse_shots_token(parts[3]);
    return config;
}

/// Record with explicit metric values; unset metrics default to `fill`.
RunRecord fixture_record(const std::string& run_id,
                         const std::map<std::string, double>& values, double fill = 0.4) {
    RunRecord record;
    record.run_id = run_id;
    record.run_index = run_index_of(run_id);
    record.config = config_of(run_id);
    record.param_count = record.config.circuit_param_count();
    record.status = "ok";

    const auto value_or_fill = [&](const char* name) {
        const auto it = values.find(name);
        return it == values.end() ? fill : it->second;
    };
    record.report.accuracy = value_or_fill("accuracy");
    record.report.mcc_f1 = value_or_fill("mcc_f1");
    record.report.sens_spec = value_or_fill("sens_spec");
    record.report.gps1 = value_or_fill("gps1");
    record.report.gps2 = value_or_fill("gps2");
    record.report.gps3 = value_or_fill("gps3");
    record.report.gps4 = value_or_fill("gps4");
    record.report.balanced_accuracy = value_or_fill("sens_spec");
    record.report.f1 = value_or_fill("accuracy");
    record.report.auc = value_or_fill("accuracy");
    record.report.mcc = 0.3;
    record.report.cv_accuracy_mean = 0.5;
    return record;
}

/// The published Dataset 1 overlap fixture: four recurrent configurations
/// plus twelve one-off fillers occupying the remaining Top-5 slots.
std::vector<RunRecord> dataset1_fixture() {
    std::vector<RunRecord> records;
    records.push_back(fixture_record("angle/strong/pauli-y/400",
                                     {{"accuracy", 0.7917},
                                      {"mcc_f1", 0.7147},
                                      {"sens_spec", 0.7643},
                                      {"gps1", 0.8466},
                                      {"gps2", 0.8090},
                                      {"gps3", 0.7321},
                                      {"gps4", 0.7460}}));
    records.push_back(fixture_record("angle/ring/pauli-x/200",
                                     {{"accuracy", 0.7500},
                                      {"mcc_f1", 0.6503},
                                      {"sens_spec", 0.7341},
                                      {"gps1", 0.7644},
                                      {"gps2", 0.7679},
                                      {"gps3", 0.5000},
                                      {"gps4", 0.6922}}));
    records.push_back(fixture_record("iqp/strong/pauli-z/150",
                                     {{"accuracy", 0.7417},
                                      {"mcc_f1", 0.6570},
                                      {"sens_spec", 0.5000},
                                      {"gps1", 0.8059},
                                      {"gps2", 0.7673},
                                      {"gps3", 0.7369},
                                      {"gps4", 0.7381}}));
    records.push_back(fixture_record("iqp/strong/pauli-z/200",
                                     {{"accuracy", 0.7167},
                                      {"mcc_f1", 0.5000},
                                      {"sens_spec", 0.7197},
                                      {"gps1", 0.7486},
                                      {"gps2", 0.7281},
                                      {"gps3", 0.5000},
                                      {"gps4", 0.5000}}));
    // fillers: each claims exactly one remaining Top-5 slot
    records.push_back(fixture_record("basis/basic/pauli-x/50", {{"accuracy", 0.7000}}));
    records.push_back(fixture_record("basis/basic/pauli-x/100", {{"mcc_f1", 0.7000}}));
    records.push_back(fixture_record("basis/basic/pauli-x/150", {{"mcc_f1", 0.6800}}));
    records.push_back(fixture_record("basis/basic/pauli-y/50", {{"sens_spec", 0.7300}}));
    records.push_back(fixture_record("basis/basic/pauli-y/100", {{"sens_spec", 0.7100}}));
    records.push_back(fixture_record("basis/basic/pauli-z/50", {{"gps1", 0.7400}}));
    records.push_back(fixture_record("basis/basic/pauli-z/100", {{"gps2", 0.7100}}));
    records.push_back(fixture_record("qsample/star/hadamard/50", {{"gps3", 0.7500}}));
    records.push_back(fixture_record("qsample/star/hadamard/100", {{"gps3", 0.7200}}));
    records.push_back(fixture_record("qsample/star/hadamard/150", {{"gps3", 0.7100}}));
    records.push_back(fixture_record("qsample/star/hadamard/200", {{"gps4", 0.7300}}));
    records.push_back(fixture_record("qsample/star/hadamard/400", {{"gps4", 0.7100}}));
    return records;
}

data::DesignMatrix desk_matrix(int n, std::uint64_t seed) {
    data::SynthSpec spec;
    spec.n_features = data::kDesignFeatures;
    spec.sigma = 0.07;
    spec.mean0.assign(data::kDesignFeatures, 0.3);
    spec.mean1.assign(data::kDesignFeatures, 0.7);
    const data::RawTable table = data::synth_dataset(spec, n, seed);
    data::DesignMatrix matrix;
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        std::array<double, data::kDesignFeatures> row{};
        for (int c = 0; c < data::kDesignFeatures; ++c) {
            row[static_cast<std::size_t>(c)] =
                std::clamp(*table.rows[r][static_cast<std::size_t>(c)], 0.0, 1.0);
        }
        matrix.rows.push_back(row);
        matrix.labels.push_back(table.labels[r]);
    }
    return matrix;
}

GridSpec desk_spec() {
    GridSpec spec;
    spec.encodings = {encode::EncodingKind::Amplitude};
    spec.architectures = {ansatz::ArchitectureKind::Basic, ansatz::ArchitectureKind::Ring};
    spec.measurements = {model::MeasurementKind::PauliZ};
    spec.shot_levels = {sim::ShotPlan::analytic(), sim::ShotPlan::finite(50, 0)};
    spec.train.epochs = 2;
    spec.train.batch_size = 8;
    spec.train.folds = 2;
    spec.base_seed = 7;
    return spec;
}

bool same_results(const RunRecord& a, const RunRecord& b) {
    if (a.run_id != b.run_id || a.cv_accuracy_mean != b.cv_accuracy_mean ||
        a.refit_epochs != b.refit_epochs || a.status != b.status) {
        return false;
    }
    for (const auto name : metrics::metric_names()) {
        if (metrics::metric_value(a.report, name) != metrics::metric_value(b.report, name)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("dse") {

TEST_CASE("default grid enumerates 625 configurations in nesting order") {
    const auto runs = dse::enumerate_grid(GridSpec::defaults());
    REQUIRE(runs.size() == 625);

    // encoding outermost, shots innermost
    CHECK(runs[0].run_id == "amplitude/basic/pauli-x/50");
    CHECK(runs[1].run_id == "amplitude/basic/pauli-x/100");
    CHECK(runs[5].run_id == "amplitude/basic/pauli-y/50");
    CHECK(runs[25].run_id == "amplitude/ring/pauli-x/50");
    CHECK(runs[125].run_id == "angle/basic/pauli-x/50");
    CHECK(runs[624].run_id == "qsample/alternating/hadamard/400");

    std::set<std::string> ids;
    std::map<std::string, int> per_encoding;
    std::map<std::string, int> per_architecture;
    std::map<std::string, int> per_measurement;
    std::map<std::string, int> per_shots;
    for (const auto& run : runs) {
        ids.insert(run.run_id);
        per_encoding[std::string(encode::to_string(run.config.encoding))]++;
        per_architecture[std::string(ansatz::to_string(run.config.architecture))]++;
        per_measurement[std::string(model::to_string(run.config.measurement))]++;
        per_shots[dse::shots_token(run.config.shot_plan)]++;
    }
    CHECK(ids.size() == 625);
    for (const auto& counts :
         {per_encoding, per_architecture, per_measurement, per_shots}) {
        REQUIRE(counts.size() == 5);
        for (const auto& [level, n] : counts) {
            CHECK(n == 125);
        }
    }

    // stable identity across re-enumeration
    const auto replay = dse::enumerate_grid(GridSpec::defaults());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        CHECK(runs[i].run_id == replay[i].run_id);
        CHECK(runs[i].seed == replay[i].seed);
    }
}

TEST_CASE("desk grids enumerate their cartesian product") {
    CHECK(dse::enumerate_grid(desk_spec()).size() == 4);
    GridSpec spec2x4 = desk_spec();
    spec2x4.measurements = {model::MeasurementKind::PauliZ, model::MeasurementKind::PauliX};
    CHECK(dse::enumerate_grid(spec2x4).size() == 8);
    GridSpec empty = desk_spec();
    empty.encodings.clear();
    CHECK_THROWS_AS(dse::enumerate_grid(empty), ConfigError);
}

TEST_CASE("grid spec files override defaults and reject unknown keys") {
    const std::string path = temp_path("hqnn_grid_spec.txt");
    {
        std::ofstream out(path);
        out << "# desk grid\n";
        out << "encodings = amplitude, angle\n";
        out << "shots = analytic, 50\n";
        out << "epochs = 3\n";
        out << "folds = 2\n";
        out << "base_seed = 99\n";
    }
    const GridSpec spec = GridSpec::from_file(path);
    CHECK(spec.encodings.size() == 2);
    CHECK(spec.architectures.size() == 5); // untouched default
    CHECK(spec.shot_levels.size() == 2);
    CHECK(spec.shot_levels[0].is_analytic());
    CHECK(spec.train.epochs == 3);
    CHECK(spec.base_seed == 99);

    {
        std::ofstream out(path);
        out << "quantum = yes\n";
    }
    CHECK_THROWS_AS(GridSpec::from_file(path), ConfigError);
    {
        std::ofstream out(path);
        out << "encodings = klein-bottle\n";
    }
    CHECK_THROWS_AS(GridSpec::from_file(path), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("factor means over uniform and hand-built fixtures") {
    std::vector<RunRecord> uniform;
    for (const auto& run : dse::enumerate_grid(GridSpec::defaults())) {
        RunRecord record;
        record.run_id = run.run_id;
        record.run_index = run.run_index;
        record.config = run.config;
        record.status = "ok";
        record.report.gps1 = 0.62;
        uniform.push_back(record);
    }
    for (const auto& row : dse::factor_means(uniform, Factor::Encoding, "gps1")) {
        CHECK(row.mean == doctest::Approx(0.62));
        CHECK(row.n == 125);
        CHECK(row.stddev == doctest::Approx(0.0));
    }

    // 8-record fixture, two levels: accuracy means by hand
    std::vector<RunRecord> fixture;
    const double angle_values[] = {0.5, 0.6, 0.7, 0.8};
    const double basis_values[] = {0.2, 0.4, 0.6, 0.0};
    const int shot_levels[] = {50, 100, 150, 200};
    for (int i = 0; i < 4; ++i) {
        fixture.push_back(fixture_record("angle/basic/pauli-z/" + std::to_string(shot_levels[i]),
                                         {{"accuracy", angle_values[i]}}));
        fixture.push_back(fixture_record("basis/basic/pauli-z/" + std::to_string(shot_levels[i]),
                                         {{"accuracy", basis_values[i]}}));
    }
    const auto means = dse::factor_means(fixture, Factor::Encoding, "accuracy");
    REQUIRE(means.size() == 2);
    for (const auto& row : means) {
        if (row.level == "angle") {
            CHECK(row.mean == doctest::Approx(0.65).epsilon(1e-12));
            CHECK(row.n == 4);
        } else {
            CHECK(row.level == "basis");
            CHECK(row.mean == doctest::Approx(0.3).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(dse::factor_means(fixture, Factor::Encoding, "bogus"), MetricError);
}

TEST_CASE("box statistics use linear-interpolation quartiles") {
    std::vector<RunRecord> records;
    const double values[] = {1.0, 2.0, 3.0, 4.0, 100.0};
    const int shot_levels[] = {50, 100, 150, 200, 400};
    for (int i = 0; i < 5; ++i) {
        records.push_back(fixture_record("angle/basic/pauli-z/" + std::to_string(shot_levels[i]),
                                         {{"accuracy", values[i]}}));
    }
    auto stats = dse::factor_distribution(records, Factor::Encoding, "accuracy");
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].q1 == doctest::Approx(2.0));
    CHECK(stats[0].median == doctest::Approx(3.0));
    CHECK(stats[0].q3 == doctest::Approx(4.0));
    CHECK(stats[0].whisker_low == doctest::Approx(1.0));
    CHECK(stats[0].whisker_high == doctest::Approx(4.0));
    REQUIRE(stats[0].outliers.size() == 1);
    CHECK(stats[0].outliers[0] == doctest::Approx(100.0));

    // permutation invariance
    std::vector<RunRecord> shuffled{records[3], records[0], records[4], records[2], records[1]};
    const auto stats2 = dse::factor_distribution(shuffled, Factor::Encoding, "accuracy");
    CHECK(stats2[0].median == stats[0].median);
    CHECK(stats2[0].q1 == stats[0].q1);
    CHECK(stats2[0].q3 == stats[0].q3);

    // a single-record level collapses all five statistics onto that value
    std::vector<RunRecord> lone{fixture_record("iqp/star/pauli-z/50", {{"accuracy", 0.55}})};
    const auto single = dse::factor_distribution(lone, Factor::Encoding, "accuracy");
    CHECK(single[0].median == doctest::Approx(0.55));
    CHECK(single[0].q1 == doctest::Approx(0.55));
    CHECK(single[0].q3 == doctest::Approx(0.55));
    CHECK(single[0].whisker_low == doctest::Approx(0.55));
    CHECK(single[0].whisker_high == doctest::Approx(0.55));
    CHECK(single[0].outliers.empty());
}

TEST_CASE("overlap table reproduces the published Dataset 1 rows") {
    const std::vector<RunRecord> records = dataset1_fixture();
    const std::vector<std::string> metric_list = dse::default_overlap_metrics();
    const dse::OverlapTable table = dse::top5_overlap(records, metric_list);

    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].display == "Angle / Strong / Pauli-Y / 400");
    CHECK(table.rows[0].count == 7);
    CHECK(table.rows[1].display == "Angle / Ring / Pauli-X / 200");
    CHECK(table.rows[1].count == 6);
    CHECK(table.rows[2].display == "IQP / Strong / Pauli-Z / 150");
    CHECK(table.rows[2].count == 6);
    CHECK(table.rows[3].display == "IQP / Strong / Pauli-Z / 200");
    CHECK(table.rows[3].count == 4);

    using Cell = std::optional<std::pair<int, double>>;
    const auto check_row = [&](const dse::OverlapRow& row, const std::vector<Cell>& expected) {
        REQUIRE(row.cells.size() == expected.size());
        for (std::size_t m = 0; m < expected.size(); ++m) {
            if (!expected[m].has_value()) {
                CHECK(!row.cells[m].has_value());
                continue;
            }
            REQUIRE(row.cells[m].has_value());
            CHECK(row.cells[m]->rank == expected[m]->first);
            CHECK(row.cells[m]->value == doctest::Approx(expected[m]->second).epsilon(1e-9));
        }
    };
    // columns: accuracy, mcc_f1, sens_spec, gps1, gps2, gps3, gps4
    check_row(table.rows[0], {Cell{{1, 0.7917}}, Cell{{1, 0.7147}}, Cell{{1, 0.7643}},
                              Cell{{1, 0.8466}}, Cell{{1, 0.8090}}, Cell{{3, 0.7321}},
                              Cell{{1, 0.7460}}});
    check_row(table.rows[1], {Cell{{2, 0.7500}}, Cell{{5, 0.6503}}, Cell{{2, 0.7341}},
                              Cell{{3, 0.7644}}, Cell{{2, 0.7679}}, std::nullopt,
                              Cell{{5, 0.6922}}});
    check_row(table.rows[2], {Cell{{3, 0.7417}}, Cell{{4, 0.6570}}, std::nullopt,
                              Cell{{2, 0.8059}}, Cell{{3, 0.7673}}, Cell{{2, 0.7369}},
                              Cell{{2, 0.7381}}});
    check_row(table.rows[3], {Cell{{4, 0.7167}}, std::nullopt, Cell{{4, 0.7197}},
                              Cell{{4, 0.7486}}, Cell{{4, 0.7281}}, std::nullopt, std::nullopt});
}

TEST_CASE("overlap corner cases") {
    const auto grid = dse::enumerate_grid(GridSpec::defaults());

    // identical rankings: every retained row recurs in every metric
    std::vector<RunRecord> records;
    for (int i = 0; i < 6; ++i) {
        const double v = 0.9 - 0.1 * i;
        records.push_back(fixture_record(
            grid[static_cast<std::size_t>(i)].run_id,
            {{"accuracy", v}, {"mcc_f1", v}, {"sens_spec", v}, {"gps1", v},
             {"gps2", v}, {"gps3", v}, {"gps4", v}}));
    }
    const auto metric_list = dse::default_overlap_metrics();
    const dse::OverlapTable aligned = dse::top5_overlap(records, metric_list);
    REQUIRE(aligned.rows.size() == 5);
    for (const auto& row : aligned.rows) {
        CHECK(row.count == static_cast<int>(metric_list.size()));
    }

    // no configuration recurring three times: empty table
    std::vector<RunRecord> sparse;
    const char* names[] = {"accuracy", "mcc_f1", "sens_spec", "gps1", "gps2", "gps3", "gps4"};
    std::size_t next_config = 0;
    for (const char* metric : names) {
        for (int rank = 0; rank < 5; ++rank) {
            sparse.push_back(fixture_record(grid[next_config++].run_id,
                                            {{metric, 0.9 - 0.05 * rank}}, 0.1));
        }
    }
    CHECK(dse::top5_overlap(sparse, metric_list).rows.empty());
    CHECK_THROWS_AS(dse::top5_overlap(records, std::vector<std::string>{}), ValidationError);
}

TEST_CASE("sweep runs every grid point and persists JSONL") {
    const data::DesignMatrix train = desk_matrix(40, 1);
    const data::DesignMatrix test = desk_matrix(16, 2);
    const std::string results = temp_path("hqnn_sweep.jsonl");
    std::remove(results.c_str());

    dse::SweepOptions options;
    options.results_path = results;
    const auto records = dse::run_sweep(desk_spec(), train, test, options);
    REQUIRE(records.size() == 4);
    for (const auto& record : records) {
        CHECK(record.status == "ok");
        CHECK(record.folds.size() == 2);
        CHECK(record.curves.size() == 3);
        CHECK(record.decisions == dse::decisions_fingerprint());
    }

    // multiset of configs equals the enumeration (resume-safe coverage)
    const auto planned = dse::enumerate_grid(desk_spec());
    for (std::size_t i = 0; i < planned.size(); ++i) {
        CHECK(records[i].run_id == planned[i].run_id);
    }

    const auto loaded = dse::read_records_jsonl(results);
    REQUIRE(loaded.size() == 4);
    std::set<std::string> loaded_ids;
    for (const auto& record : loaded) {
        loaded_ids.insert(record.run_id);
        const auto original = std::find_if(records.begin(), records.end(), [&](const auto& r) {
            return r.run_id == record.run_id;
        });
        REQUIRE(original != records.end());
        CHECK(same_results(*original, record));
    }
    CHECK(loaded_ids.size() == 4);
    std::remove(results.c_str());
}

TEST_CASE("sweep results are independent of worker count") {
    const data::DesignMatrix train = desk_matrix(36, 3);
    const data::DesignMatrix test = desk_matrix(12, 4);

    dse::SweepOptions serial;
    const auto one = dse::run_sweep(desk_spec(), train, test, serial);
    dse::SweepOptions parallel;
    parallel.workers = 4;
    const auto four = dse::run_sweep(desk_spec(), train, test, parallel);

    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(same_results(one[i], four[i]));
    }
}

TEST_CASE("interrupted sweeps resume exactly the missing runs") {
    const data::DesignMatrix train = desk_matrix(36, 5);
    const data::DesignMatrix test = desk_matrix(12, 6);
    const std::string results = temp_path("hqnn_resume.jsonl");
    std::remove(results.c_str());

    dse::SweepOptions options;
    options.results_path = results;
    const auto full = dse::run_sweep(desk_spec(), train, test, options);
    REQUIRE(full.size() == 4);

    // drop the middle two lines
    std::vector<std::string> lines;
    {
        std::ifstream in(results);
        std::string line;
        while (std::getline(in, line)) {
            lines.push_back(line);
        }
    }
    REQUIRE(lines.size() == 4);
    {
        std::ofstream out(results);
        out << lines[0] << "\n" << lines[3] << "\n";
    }

    dse::SweepOptions resume_options;
    resume_options.results_path = results;
    resume_options.resume = true;
    const auto resumed = dse::run_sweep(desk_spec(), train, test, resume_options);
    REQUIRE(resumed.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(same_results(resumed[i], full[i]));
    }
    // the file now holds all four again, the re-executed two appended last
    const auto reloaded = dse::read_records_jsonl(results);
    CHECK(reloaded.size() == 4);
    std::remove(results.c_str());
}

TEST_CASE("corrupt results lines are integrity errors naming the line") {
    const std::string results = temp_path("hqnn_corrupt.jsonl");
    {
        std::ofstream out(results);
        out << "{ this is not json\n";
    }
    CHECK_THROWS_WITH_AS(dse::read_records_jsonl(results), doctest::Contains("line 1"),
                         IntegrityError);
    std::remove(results.c_str());
}

TEST_CASE("record JSON round trip preserves identity") {
    const std::vector<RunRecord> fixture = dataset1_fixture();
    const std::string line = dse::record_to_json_line(fixture[0]);
    const RunRecord parsed = dse::record_from_json_line(line, 1);
    CHECK(same_results(fixture[0], parsed));
    CHECK(parsed.run_index == fixture[0].run_index);
    CHECK(parsed.param_count == fixture[0].param_count);
}

} // TEST_SUITE
