// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "hqnn/data/csv.hpp"
#include "hqnn/data/preprocess.hpp"
#include "hqnn/data/synth.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

using namespace hqnn;
using data::ImputePolicy;
using data::Matrix;
using data::RawTable;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

RawTable table_from(const std::vector<std::string>& names,
                    const std::vector<std::vector<std::optional<double>>>& rows,
                    const std::vector<int>& labels) {
    RawTable table;
    table.feature_names = names;
    table.rows = rows;
    table.labels = labels;
    table.label_column = "label";
    return table;
}

} // namespace

TEST_SUITE("dataprep") {

TEST_CASE("ingest a D1-shaped CSV: 400 rows, 24 features") {
    data::SynthSpec spec;
    spec.n_features = 24;
    const RawTable generated = data::synth_dataset(spec, 400, 77);
    const std::string path = temp_path("hqnn_d1_shape.csv");
    data::write_raw_table_csv(path, generated);

    const RawTable loaded = data::ingest_csv(path, data::CsvSchema{});
    CHECK(loaded.n_rows() == 400);
    CHECK(loaded.n_features() == 24);
    CHECK(loaded.labels == generated.labels);
    std::remove(path.c_str());
}

TEST_CASE("categorical mapping and error localization") {
    const std::string path = temp_path("hqnn_cat.csv");
    {
        std::ofstream out(path);
        out << "age,bp,class\n40,normal,ckd\n50,abnormal,notckd\n";
    }
    data::CsvSchema schema;
    schema.label_column = "class";
    schema.positive_token = "ckd";
    schema.token_map = {{"normal", 0.0}, {"abnormal", 1.0}};
    const RawTable table = data::ingest_csv(path, schema);
    CHECK(table.n_rows() == 2);
    CHECK(*table.rows[0][1] == 0.0);
    CHECK(*table.rows[1][1] == 1.0);
    CHECK(table.labels == std::vector<int>{1, 0});

    {
        std::ofstream out(path);
        out << "age,bp,class\n40,mystery,ckd\n";
    }
    CHECK_THROWS_WITH_AS(data::ingest_csv(path, schema),
                         doctest::Contains("column 'bp'"), DataError);

    {
        std::ofstream out(path);
        out << "";
    }
    CHECK_THROWS_AS(data::ingest_csv(path, schema), DataError);
    std::remove(path.c_str());
}

TEST_CASE("missing label column is an ingestion error") {
    const std::string path = temp_path("hqnn_nolabel.csv");
    {
        std::ofstream out(path);
        out << "a,b\n1,2\n";
    }
    CHECK_THROWS_AS(data::ingest_csv(path, data::CsvSchema{}), DataError);
    std::remove(path.c_str());
}

TEST_CASE("mean imputation for continuous, median for binary") {
    const RawTable table = table_from(
        {"cont", "bin"},
        {{1.0, 0.0}, {std::nullopt, 0.0}, {3.0, 1.0}, {2.0, std::nullopt}},
        {0, 1, 0, 1});
    const RawTable filled = data::impute(table, ImputePolicy::MeanMedian);
    CHECK(*filled.rows[1][0] == doctest::Approx(2.0)); // mean of {1, 3, 2}
    CHECK(*filled.rows[3][1] == doctest::Approx(0.0)); // median of {0, 0, 1}
    CHECK(filled.complete());
}

TEST_CASE("imputation of a complete table is the identity") {
    const RawTable table =
        table_from({"a"}, {{1.5}, {2.5}}, {0, 1});
    const RawTable filled = data::impute(table, ImputePolicy::MeanMedian);
    CHECK(*filled.rows[0][0] == 1.5);
    CHECK(*filled.rows[1][0] == 2.5);
}

TEST_CASE("leave-empty realizes missing cells at the scaled zero") {
    const RawTable table = table_from({"x"}, {{5.0}, {std::nullopt}, {9.0}}, {0, 1, 0});
    const RawTable filled = data::impute(table, ImputePolicy::LeaveEmpty);
    CHECK(*filled.rows[1][0] == doctest::Approx(5.0)); // column minimum
}

TEST_CASE("fully missing column is an imputation error") {
    const RawTable table = table_from({"x"}, {{std::nullopt}, {std::nullopt}}, {0, 1});
    CHECK_THROWS_AS(data::impute(table, ImputePolicy::MeanMedian), DataError);
}

TEST_CASE("jacobi solves the hand-decomposed 2x2") {
    Matrix m(2, 2);
    m.at(0, 0) = 2.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    m.at(1, 1) = 2.0;
    const data::EigenResult eigen = data::jacobi_eigen_symmetric(m);
    CHECK(eigen.values[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(eigen.values[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("rank-one data concentrates variance on the first component") {
    Matrix m(30, 3);
    rng::SplitMix64 gen(42);
    for (std::size_t r = 0; r < m.n_rows; ++r) {
        const double t = gen.next_uniform(-1.0, 1.0);
        m.at(r, 0) = 2.0 * t;
        m.at(r, 1) = -1.0 * t;
        m.at(r, 2) = 0.5 * t;
    }
    const data::PcaModel model = data::pca_fit(m, 3);
    const double total = model.eigenvalues[0] + model.eigenvalues[1] + model.eigenvalues[2];
    CHECK(model.eigenvalues[0] / total >= 0.9999);
    CHECK(model.padded_components >= 1); // degenerate directions get zero rows
}

TEST_CASE("full-rank pca reconstructs the data") {
    Matrix m(40, 4);
    rng::SplitMix64 gen(7);
    for (double& v : m.values) {
        v = gen.next_gaussian();
    }
    const data::PcaReduced reduced = data::pca_reduce(m, 4);
    // X_hat = mean + scores * components
    for (std::size_t r = 0; r < m.n_rows; ++r) {
        for (std::size_t c = 0; c < m.n_cols; ++c) {
            double rebuilt = reduced.model.mean[c];
            for (std::size_t k = 0; k < 4; ++k) {
                rebuilt += reduced.reduced.at(r, k) * reduced.model.components.at(k, c);
            }
            CHECK(std::abs(rebuilt - m.at(r, c)) < 1e-8);
        }
    }
}

TEST_CASE("pca output columns are uncorrelated") {
    Matrix m(60, 5);
    rng::SplitMix64 gen(11);
    for (std::size_t r = 0; r < m.n_rows; ++r) {
        const double shared = gen.next_gaussian();
        for (std::size_t c = 0; c < m.n_cols; ++c) {
            m.at(r, c) = shared * (0.3 + 0.2 * static_cast<double>(c)) + gen.next_gaussian();
        }
    }
    const data::PcaReduced reduced = data::pca_reduce(m, 4);
    const auto& scores = reduced.reduced;
    std::vector<double> mean(4, 0.0);
    for (std::size_t r = 0; r < scores.n_rows; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            mean[c] += scores.at(r, c);
        }
    }
    for (double& v : mean) {
        v /= static_cast<double>(scores.n_rows);
    }
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            double cov = 0.0;
            for (std::size_t r = 0; r < scores.n_rows; ++r) {
                cov += (scores.at(r, a) - mean[a]) * (scores.at(r, b) - mean[b]);
            }
            cov /= static_cast<double>(scores.n_rows - 1);
            const double scale =
                std::max(reduced.model.eigenvalues[a], reduced.model.eigenvalues[b]);
            CHECK(std::abs(cov) / scale < 1e-8);
        }
    }
}

TEST_CASE("pca sign convention is reproducible") {
    Matrix m(25, 3);
    rng::SplitMix64 gen(13);
    for (double& v : m.values) {
        v = gen.next_gaussian();
    }
    const data::PcaModel model = data::pca_fit(m, 3);
    for (std::size_t comp = 0; comp < 3; ++comp) {
        double best = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
            best = std::max(best, std::abs(model.components.at(comp, c)));
        }
        bool found_positive_max = false;
        for (std::size_t c = 0; c < 3; ++c) {
            if (std::abs(model.components.at(comp, c)) == best) {
                found_positive_max = model.components.at(comp, c) > 0.0;
                break;
            }
        }
        CHECK(found_positive_max);
    }
}

TEST_CASE("min-max scaling to [0, 1] with clamping") {
    Matrix m(2, 1);
    m.at(0, 0) = 2.0;
    m.at(1, 0) = 90.0;
    const std::vector<std::uint32_t> fit_rows{0, 1};
    const data::MinMaxScaler scaler = data::minmax_fit(m, fit_rows);
    const Matrix scaled = data::minmax_transform(scaler, m);
    CHECK(scaled.at(0, 0) == doctest::Approx(0.0));
    CHECK(scaled.at(1, 0) == doctest::Approx(1.0));

    Matrix below(1, 1);
    below.at(0, 0) = -10.0;
    CHECK(data::minmax_transform(scaler, below).at(0, 0) == 0.0);

    Matrix constant(3, 1);
    constant.at(0, 0) = constant.at(1, 0) = constant.at(2, 0) = 4.2;
    const data::MinMaxScaler flat = data::minmax_fit(constant, fit_rows);
    CHECK(data::minmax_transform(flat, constant).at(0, 0) == 0.0);
}

TEST_CASE("scaling then inverse-scaling is the identity on fit rows") {
    Matrix m(20, 3);
    rng::SplitMix64 gen(17);
    for (double& v : m.values) {
        v = gen.next_uniform(-5.0, 12.0);
    }
    std::vector<std::uint32_t> fit_rows(m.n_rows);
    for (std::size_t i = 0; i < fit_rows.size(); ++i) {
        fit_rows[i] = static_cast<std::uint32_t>(i);
    }
    const data::MinMaxScaler scaler = data::minmax_fit(m, fit_rows);
    const Matrix round_trip = data::minmax_inverse(scaler, data::minmax_transform(scaler, m));
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        CHECK(std::abs(round_trip.values[i] - m.values[i]) < 1e-12);
    }
}

TEST_CASE("stratified split: 400 rows at 62.5/37.5 give 280/120") {
    std::vector<int> labels(400);
    for (int i = 0; i < 250; ++i) {
        labels[static_cast<std::size_t>(i)] = 1;
    }
    const data::SplitIndices split = data::stratified_split(labels, 0.3, 42);
    CHECK(split.train.size() == 280);
    CHECK(split.test.size() == 120);

    long test_pos = 0;
    for (const auto i : split.test) {
        test_pos += labels[i];
    }
    CHECK(test_pos == 75); // 30% of 250

    const data::SplitIndices replay = data::stratified_split(labels, 0.3, 42);
    CHECK(split.train == replay.train);
    CHECK(split.test == replay.test);

    std::set<std::uint32_t> all(split.train.begin(), split.train.end());
    all.insert(split.test.begin(), split.test.end());
    CHECK(all.size() == 400);
}

TEST_CASE("split preserves class ratio within one row") {
    std::vector<int> labels(103);
    for (int i = 0; i < 61; ++i) {
        labels[static_cast<std::size_t>(i)] = 1;
    }
    const data::SplitIndices split = data::stratified_split(labels, 0.3, 9);
    long test_pos = 0;
    for (const auto i : split.test) {
        test_pos += labels[i];
    }
    const double expected = 61.0 * 0.3;
    CHECK(std::abs(static_cast<double>(test_pos) - expected) <= 1.0);
    CHECK_THROWS_AS(data::stratified_split(std::vector<int>{1, 1, 1, 0}, 0.3, 1), DataError);
}

TEST_CASE("stratified k-fold determinism and partition") {
    std::vector<int> labels(100);
    for (int i = 0; i < 60; ++i) {
        labels[static_cast<std::size_t>(i)] = 1;
    }
    const std::vector<int> folds = data::stratified_kfold(labels, 10, 42);
    CHECK(folds == data::stratified_kfold(labels, 10, 42));
    CHECK(folds != data::stratified_kfold(labels, 10, 43));
    CHECK_THROWS_AS(data::stratified_kfold(std::vector<int>{1, 0, 1, 0}, 10, 1), DataError);
}

TEST_CASE("full preprocessing pipeline on a 400-row table") {
    data::SynthSpec spec;
    spec.n_features = 24;
    const RawTable table = data::synth_dataset(spec, 400, 4242);
    const data::PrepResult prep = data::preprocess(table, ImputePolicy::MeanMedian, 0.3, 42);

    CHECK(prep.train.n_rows() == 280);
    CHECK(prep.test.n_rows() == 120);
    for (const auto& row : prep.train.rows) {
        for (const double v : row) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    // leak-freedom: every fitted transform saw exactly the training rows
    const auto& provenance = prep.train.provenance;
    CHECK(provenance.pca_fit_rows == provenance.scaler_fit_rows);
    CHECK(provenance.pca_fit_rows.size() == 280);
    const std::set<std::uint32_t> fit_rows(provenance.pca_fit_rows.begin(),
                                           provenance.pca_fit_rows.end());
    for (const auto test_row : prep.test.provenance.source_rows) {
        CHECK(fit_rows.count(test_row) == 0);
    }

    // byte-identical replay
    const data::PrepResult again = data::preprocess(table, ImputePolicy::MeanMedian, 0.3, 42);
    CHECK(again.train.rows == prep.train.rows);
    CHECK(again.test.labels == prep.test.labels);
}

TEST_CASE("design matrix round trip through CSV") {
    data::SynthSpec spec;
    spec.n_features = 24;
    const RawTable table = data::synth_dataset(spec, 60, 5);
    const data::PrepResult prep = data::preprocess(table, ImputePolicy::MeanMedian, 0.3, 2);

    const std::string path = temp_path("hqnn_dm.csv");
    data::write_design_matrix_csv(path, prep.train);
    const data::DesignMatrix loaded = data::read_design_matrix_csv(path);
    REQUIRE(loaded.n_rows() == prep.train.n_rows());
    CHECK(loaded.labels == prep.train.labels);
    for (std::size_t r = 0; r < loaded.n_rows(); ++r) {
        for (int c = 0; c < data::kDesignFeatures; ++c) {
            CHECK(loaded.rows[r][static_cast<std::size_t>(c)] ==
                  prep.train.rows[r][static_cast<std::size_t>(c)]);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("synthetic data is balanced, reproducible and separable") {
    data::SynthSpec spec;
    const RawTable table = data::synth_dataset(spec, 400, 31337);
    long positives = 0;
    for (const int y : table.labels) {
        positives += y;
    }
    CHECK(positives == 250);
    CHECK(table.n_rows() == 400);

    const RawTable replay = data::synth_dataset(spec, 400, 31337);
    CHECK(replay.labels == table.labels);
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        CHECK(*replay.rows[r][0] == *table.rows[r][0]);
    }

    // a fixed linear rule (midpoint threshold on the mean feature) separates
    long correct = 0;
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        double mean = 0.0;
        for (std::size_t c = 0; c < table.n_features(); ++c) {
            mean += *table.rows[r][c];
        }
        mean /= static_cast<double>(table.n_features());
        const int predicted = mean > 0.0 ? 1 : 0;
        correct += predicted == table.labels[r] ? 1 : 0;
    }
    CHECK(static_cast<double>(correct) / 400.0 >= 0.95);
}

} // TEST_SUITE
