// SPDX-License-Identifier: Apache-2.0
#include "hqnn/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "hqnn/data/csv.hpp"
#include "hqnn/data/preprocess.hpp"
#include "hqnn/data/synth.hpp"
#include "hqnn/data/tsne.hpp"
#include "hqnn/dse/aggregate.hpp"
#include "hqnn/dse/sweep.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"

namespace fs = std::filesystem;

namespace hqnn::cli {

namespace {

std::optional<std::uint64_t> env_seed_override() {
    const char* raw = std::getenv("HQNN_DSE_SEED");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    try {
        return std::stoull(raw);
    } catch (const std::exception&) {
        throw ConfigError("HQNN_DSE_SEED must be an unsigned integer, got '" +
                          std::string(raw) + "'");
    }
}

using ManifestEntries = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const ManifestEntries& entries) {
    const fs::path path = out_dir / (command + "_manifest.txt");
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write manifest: " + path.string());
    }
    out << "tool = " << kToolName << " " << kToolVersion << "\n";
    out << "command = " << command << "\n";
    for (const auto& [key, value] : entries) {
        out << key << " = " << value << "\n";
    }
}

fs::path ensure_out_dir(const std::string& out) {
    const fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

std::string sanitize_run_id(const std::string& run_id) {
    std::string safe = run_id;
    for (char& c : safe) {
        if (c == '/') {
            c = '-';
        }
    }
    return safe;
}

std::string format_cell(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << value;
    return out.str();
}

data::CsvSchema load_schema(const std::string& schema_path) {
    if (schema_path.empty()) {
        return data::CsvSchema{};
    }
    return data::CsvSchema::from_file(schema_path);
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
    std::string out;
    int rows = 400;
    int features = 8;
    double balance = 0.625;
    double sigma = 0.25;
    double separation = 2.0;
    std::uint64_t seed = 7;
    std::string file_name = "synth.csv";
};

int cmd_synth(const SynthArgs& args) {
    const fs::path out_dir = ensure_out_dir(args.out);
    data::SynthSpec spec;
    spec.n_features = args.features;
    spec.class1_fraction = args.balance;
    spec.sigma = args.sigma;
    spec.separation = args.separation;
    const data::RawTable table = data::synth_dataset(spec, args.rows, args.seed);
    const fs::path csv_path = out_dir / args.file_name;
    data::write_raw_table_csv(csv_path.string(), table);

    write_manifest(out_dir, "synth",
                   {{"output", csv_path.string()},
                    {"rows", std::to_string(args.rows)},
                    {"features", std::to_string(args.features)},
                    {"balance", std::to_string(args.balance)},
                    {"sigma", std::to_string(args.sigma)},
                    {"separation", std::to_string(args.separation)},
                    {"seed", std::to_string(args.seed)}});
    std::cout << "wrote " << csv_path.string() << " (" << table.n_rows() << " rows, "
              << table.n_features() << " features)\n";
    return kExitOk;
}

// ---- prep -----------------------------------------------------------------

struct PrepArgs {
    std::string input;
    std::string schema;
    std::string policy = "mean-median";
    std::string out;
    double test_ratio = 0.3;
    std::uint64_t split_seed = 42;
};

int cmd_prep(const PrepArgs& args) {
    const fs::path out_dir = ensure_out_dir(args.out);
    const data::CsvSchema schema = load_schema(args.schema);
    const data::RawTable table = data::ingest_csv(args.input, schema);
    const data::ImputePolicy policy = args.policy == "mean-median"
                                          ? data::ImputePolicy::MeanMedian
                                          : data::ImputePolicy::LeaveEmpty;
    const data::PrepResult prepared =
        data::preprocess(table, policy, args.test_ratio, args.split_seed);

    const fs::path train_path = out_dir / "train.csv";
    const fs::path test_path = out_dir / "test.csv";
    data::write_design_matrix_csv(train_path.string(), prepared.train);
    data::write_design_matrix_csv(test_path.string(), prepared.test);

    ManifestEntries entries{{"input", args.input},
                            {"schema", args.schema.empty() ? "(defaults)" : args.schema},
                            {"policy", args.policy},
                            {"test_ratio", std::to_string(args.test_ratio)},
                            {"split_seed", std::to_string(args.split_seed)},
                            {"train_rows", std::to_string(prepared.train.n_rows())},
                            {"test_rows", std::to_string(prepared.test.n_rows())},
                            {"train_output", train_path.string()},
                            {"test_output", test_path.string()}};
    std::istringstream provenance(prepared.train.provenance.to_text());
    std::string line;
    while (std::getline(provenance, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            entries.emplace_back("provenance." + line.substr(0, eq - 1),
                                 line.substr(eq + 2));
        }
    }
    write_manifest(out_dir, "prep", entries);
    std::cout << "wrote " << train_path.string() << " (" << prepared.train.n_rows()
              << " rows) and " << test_path.string() << " (" << prepared.test.n_rows()
              << " rows)\n";
    return kExitOk;
}

// ---- tsne -----------------------------------------------------------------

struct TsneArgs {
    std::vector<std::string> inputs;
    std::string schema;
    std::string out;
    std::uint64_t seed = 42;
    int iterations = 500;
    double learning_rate = 0.0; // 0 = auto
    double perplexity_cap = 30.0;
};

int cmd_tsne(const TsneArgs& args) {
    const fs::path out_dir = ensure_out_dir(args.out);
    const data::CsvSchema schema = load_schema(args.schema);

    std::vector<data::RawTable> tables;
    std::vector<std::string> names;
    for (const std::string& input : args.inputs) {
        tables.push_back(data::ingest_csv(input, schema));
        names.push_back(fs::path(input).stem().string());
    }

    data::TsneConfig config;
    config.seed = args.seed;
    config.iterations = args.iterations;
    config.learning_rate = args.learning_rate;
    config.perplexity_cap = args.perplexity_cap;
    const data::TsneResult result = data::tsne_compare(tables, config);

    const fs::path embedding_path = out_dir / "tsne_embedding.csv";
    {
        std::ofstream out(embedding_path);
        out.precision(17);
        out << "dataset_index,dataset,x,y\n";
        for (std::size_t i = 0; i < result.embedding.n_rows; ++i) {
            const int t = result.dataset_of_row[i];
            out << t << "," << names[static_cast<std::size_t>(t)] << ","
                << result.embedding.at(i, 0) << "," << result.embedding.at(i, 1) << "\n";
        }
    }

    const fs::path distance_path = out_dir / "tsne_centroid_distances.csv";
    {
        std::ofstream out(distance_path);
        out.precision(17);
        out << "dataset";
        for (const auto& name : names) {
            out << "," << name;
        }
        out << "\n";
        for (std::size_t a = 0; a < names.size(); ++a) {
            out << names[a];
            for (std::size_t b = 0; b < names.size(); ++b) {
                out << "," << result.centroid_distances.at(a, b);
            }
            out << "\n";
        }
    }

    ManifestEntries entries{{"seed", std::to_string(args.seed)},
                            {"iterations", std::to_string(args.iterations)},
                            {"learning_rate", std::to_string(args.learning_rate)},
                            {"perplexity_cap", std::to_string(args.perplexity_cap)},
                            {"effective_perplexity", std::to_string(result.perplexity)},
                            {"embedding_output", embedding_path.string()},
                            {"distance_output", distance_path.string()}};
    for (const auto& input : args.inputs) {
        entries.emplace_back("input", input);
    }
    write_manifest(out_dir, "tsne", entries);

    std::cout << "embedded " << result.embedding.n_rows << " rows from " << names.size()
              << " datasets (perplexity " << result.perplexity << ")\n";
    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = a + 1; b < names.size(); ++b) {
            std::cout << "centroid distance " << names[a] << " <-> " << names[b] << " = "
                      << result.centroid_distances.at(a, b) << "\n";
        }
    }
    return kExitOk;
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
    std::string train_path;
    std::string test_path;
    std::string encoding = "angle";
    std::string architecture = "ring";
    std::string measurement = "pauli-z";
    std::string shots = "analytic";
    std::string out;
    std::uint64_t base_seed = 42;
    int epochs = 50;
    int batch_size = 16;
    double learning_rate = 1e-3;
    int patience = 5;
    int folds = 10;
    std::uint64_t split_seed = 42;
    int fold_workers = 1;
};

optim::TrainConfig train_config_from(const RunArgs& args) {
    optim::TrainConfig train;
    train.epochs = args.epochs;
    train.batch_size = args.batch_size;
    train.adam.learning_rate = args.learning_rate;
    train.patience = args.patience;
    train.folds = args.folds;
    train.split_seed = args.split_seed;
    return train;
}

int cmd_run(const RunArgs& args) {
    const fs::path out_dir = ensure_out_dir(args.out);
    std::uint64_t base_seed = args.base_seed;
    if (const auto env = env_seed_override()) {
        base_seed = *env;
    }

    model::HqnnConfig config;
    config.encoding = *encode::encoding_from_string(args.encoding);
    config.architecture = *ansatz::architecture_from_string(args.architecture);
    config.measurement = *model::measurement_from_string(args.measurement);
    config.shot_plan = dse::parse_shots_token(args.shots);
    if (!config.shot_plan.is_analytic()) {
        static constexpr int kGridShotLevels[] = {50, 100, 150, 200, 400};
        bool on_grid = false;
        for (const int level : kGridShotLevels) {
            on_grid |= config.shot_plan.shots == level;
        }
        if (!on_grid) {
            std::cerr << "note: " << config.shot_plan.shots
                      << " shots is off the default grid {50, 100, 150, 200, 400}\n";
        }
    }

    const data::DesignMatrix train = data::read_design_matrix_csv(args.train_path);
    const data::DesignMatrix test = data::read_design_matrix_csv(args.test_path);

    dse::PlannedRun planned;
    planned.config = config;
    planned.run_id = dse::config_run_id(config);
    planned.run_index = 0;
    planned.seed = rng::derive(base_seed, planned.run_id);

    const optim::TrainConfig train_cfg = train_config_from(args);
    const dse::RunRecord record =
        dse::run_one(planned, train_cfg, base_seed, train, test, args.fold_workers);

    const fs::path result_path = out_dir / "result.jsonl";
    std::ofstream(result_path) << dse::record_to_json_line(record) << "\n";

    write_manifest(out_dir, "run",
                   {{"train", args.train_path},
                    {"test", args.test_path},
                    {"config", record.run_id},
                    {"base_seed", std::to_string(base_seed)},
                    {"run_seed", std::to_string(record.run_seed)},
                    {"epochs", std::to_string(args.epochs)},
                    {"batch_size", std::to_string(args.batch_size)},
                    {"learning_rate", std::to_string(args.learning_rate)},
                    {"patience", std::to_string(args.patience)},
                    {"folds", std::to_string(args.folds)},
                    {"split_seed", std::to_string(args.split_seed)},
                    {"result_output", result_path.string()}});

    std::cout << dse::config_display(record.config) << "\n";
    std::cout << "param_count = " << record.param_count << "\n";
    std::cout << "cv_accuracy_mean = " << record.cv_accuracy_mean << "\n";
    std::cout << "refit_epochs = " << record.refit_epochs << "\n";
    for (const auto name : metrics::metric_names()) {
        std::cout << name << " = " << metrics::metric_value(record.report, name) << "\n";
    }
    std::cout << "wall_time_seconds = " << record.wall_time_seconds << "\n";
    return kExitOk;
}

// ---- grid -----------------------------------------------------------------

struct GridArgs {
    std::string spec_path;
    std::string train_path;
    std::string test_path;
    std::string out;
    std::string results_name = "results.jsonl";
    int workers = 1;
    int fold_workers = 1;
    bool resume = false;
};

int cmd_grid(const GridArgs& args) {
    const fs::path out_dir = ensure_out_dir(args.out);
    dse::GridSpec spec =
        args.spec_path.empty() ? dse::GridSpec::defaults() : dse::GridSpec::from_file(args.spec_path);
    if (const auto env = env_seed_override()) {
        spec.base_seed = *env;
    }

    const data::DesignMatrix train = data::read_design_matrix_csv(args.train_path);
    const data::DesignMatrix test = data::read_design_matrix_csv(args.test_path);

    dse::SweepOptions options;
    options.workers = args.workers;
    options.fold_workers = args.fold_workers;
    options.resume = args.resume;
    options.results_path = (out_dir / args.results_name).string();
    if (!args.resume && fs::exists(options.results_path)) {
        fs::remove(options.results_path);
    }

    const std::vector<dse::RunRecord> records = dse::run_sweep(spec, train, test, options);

    std::size_t failed = 0;
    for (const auto& record : records) {
        if (record.status != "ok") {
            ++failed;
        }
    }

    write_manifest(out_dir, "grid",
                   {{"spec", args.spec_path.empty() ? "(defaults)" : args.spec_path},
                    {"train", args.train_path},
                    {"test", args.test_path},
                    {"base_seed", std::to_string(spec.base_seed)},
                    {"workers", std::to_string(args.workers)},
                    {"fold_workers", std::to_string(args.fold_workers)},
                    {"resume", args.resume ? "true" : "false"},
                    {"runs", std::to_string(records.size())},
                    {"failed", std::to_string(failed)},
                    {"results_output", options.results_path}});

    std::cout << "completed " << records.size() << " runs (" << failed << " failed) -> "
              << options.results_path << "\n";
    return kExitOk;
}

// ---- aggregate ------------------------------------------------------------

struct AggregateArgs {
    std::string results_path;
    std::string view;
    std::string out;
    std::string metrics_csv;
    int top_k = 5;
    int min_count = 3;
};

void write_factor_means_panel(const fs::path& path, std::span<const dse::RunRecord> records,
                              dse::Factor factor) {
    std::ofstream out(path);
    out.precision(17);
    out << "level,metric,mean,stddev,n\n";
    for (const std::string metric : {"gps1", "gps2", "gps3", "gps4"}) {
        for (const auto& row : dse::factor_means(records, factor, metric)) {
            out << row.level << "," << metric << "," << row.mean << "," << row.stddev << ","
                << row.n << "\n";
        }
    }
}

void write_factor_dist_panel(const fs::path& path, std::span<const dse::RunRecord> records,
                             dse::Factor factor, const std::string& metric) {
    std::ofstream out(path);
    out.precision(17);
    out << "level,n,median,q1,q3,whisker_low,whisker_high,outliers\n";
    for (const auto& row : dse::factor_distribution(records, factor, metric)) {
        out << row.level << "," << row.n << "," << row.median << "," << row.q1 << "," << row.q3
            << "," << row.whisker_low << "," << row.whisker_high << ",";
        for (std::size_t i = 0; i < row.outliers.size(); ++i) {
            out << (i > 0 ? ";" : "") << row.outliers[i];
        }
        out << "\n";
    }
}

int cmd_aggregate(const AggregateArgs& args) {
    const fs::path out_dir = ensure_out_dir(args.out);
    const std::vector<dse::RunRecord> records = dse::read_records_jsonl(args.results_path);

    std::size_t failed_records = 0;
    for (const auto& record : records) {
        if (record.status != "ok") {
            ++failed_records;
        }
    }
    ManifestEntries entries{{"results", args.results_path},
                            {"view", args.view},
                            {"records", std::to_string(records.size())},
                            {"failed_records", std::to_string(failed_records)}};

    if (args.view == "factor-means") {
        write_factor_means_panel(out_dir / "panel_a_gps_by_encoding.csv", records,
                                 dse::Factor::Encoding);
        write_factor_means_panel(out_dir / "panel_b_gps_by_architecture.csv", records,
                                 dse::Factor::Architecture);
        std::cout << "wrote panel_a_gps_by_encoding.csv, panel_b_gps_by_architecture.csv\n";
    } else if (args.view == "factor-dist") {
        write_factor_dist_panel(out_dir / "panel_c_accuracy_by_encoding.csv", records,
                                dse::Factor::Encoding, "accuracy");
        write_factor_dist_panel(out_dir / "panel_d_accuracy_by_architecture.csv", records,
                                dse::Factor::Architecture, "accuracy");
        write_factor_dist_panel(out_dir / "panel_e_accuracy_by_shots.csv", records,
                                dse::Factor::Shots, "accuracy");
        write_factor_dist_panel(out_dir / "panel_f_accuracy_by_measurement.csv", records,
                                dse::Factor::Measurement, "accuracy");
        std::cout << "wrote panels c-f (accuracy distributions)\n";
    } else if (args.view == "overlap") {
        std::vector<std::string> metric_list = dse::default_overlap_metrics();
        if (!args.metrics_csv.empty()) {
            metric_list.clear();
            std::istringstream in(args.metrics_csv);
            std::string token;
            while (std::getline(in, token, ',')) {
                metric_list.push_back(token);
            }
        }
        const dse::OverlapTable table =
            dse::top5_overlap(records, metric_list, args.top_k, args.min_count);
        const fs::path path = out_dir / "overlap_top5.csv";
        std::ofstream out(path);
        out << "config,run_id,count";
        for (const auto& metric : table.metrics) {
            out << "," << metric;
        }
        out << "\n";
        for (const auto& row : table.rows) {
            out << "\"" << row.display << "\"," << row.run_id << "," << row.count;
            for (const auto& cell : row.cells) {
                if (cell.has_value()) {
                    out << "," << cell->rank << "(" << format_cell(cell->value) << ")";
                } else {
                    out << ",--";
                }
            }
            out << "\n";
        }
        entries.emplace_back("rows", std::to_string(table.rows.size()));
        std::cout << "wrote overlap_top5.csv (" << table.rows.size() << " rows)\n";
    } else if (args.view == "curves") {
        const fs::path curve_dir = out_dir / "curves";
        fs::create_directories(curve_dir);
        std::size_t written = 0;
        for (const auto& record : records) {
            if (record.status != "ok") {
                continue;
            }
            for (const auto& curve : record.curves) {
                const fs::path path =
                    curve_dir / (sanitize_run_id(record.run_id) + "_" +
                                 std::string(metrics::to_string(curve.kind)) + ".csv");
                std::ofstream out(path);
                out.precision(17);
                out << "threshold,x,y\n";
                for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
                    out << curve.thresholds[i] << "," << curve.x_values[i] << ","
                        << curve.y_values[i] << "\n";
                }
                ++written;
            }
        }
        {
            std::ofstream out(out_dir / "panel_g_specificity_sensitivity.csv");
            out.precision(17);
            out << "run_id,config,specificity,sensitivity\n";
            for (const auto& record : records) {
                if (record.status == "ok") {
                    out << record.run_id << ",\"" << dse::config_display(record.config) << "\","
                        << record.report.specificity << "," << record.report.recall << "\n";
                }
            }
        }
        {
            std::ofstream out(out_dir / "panel_h_mcc_f1.csv");
            out.precision(17);
            out << "run_id,config,f1,mcc\n";
            for (const auto& record : records) {
                if (record.status == "ok") {
                    out << record.run_id << ",\"" << dse::config_display(record.config) << "\","
                        << record.report.f1 << "," << record.report.mcc << "\n";
                }
            }
        }
        entries.emplace_back("curve_files", std::to_string(written));
        std::cout << "wrote " << written << " curve files plus panels g-h\n";
    }

    write_manifest(out_dir, "aggregate", entries);
    return kExitOk;
}

} // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{std::string(kToolName) +
                 " - hybrid quantum neural network design-space exploration"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic binary dataset");
    synth->add_option("--out", synth_args.out, "output directory")->required();
    synth->add_option("--rows", synth_args.rows, "row count");
    synth->add_option("--features", synth_args.features, "feature count");
    synth->add_option("--balance", synth_args.balance, "positive-class fraction");
    synth->add_option("--sigma", synth_args.sigma, "cluster standard deviation");
    synth->add_option("--separation", synth_args.separation, "cluster mean separation");
    synth->add_option("--seed", synth_args.seed, "generator seed");
    synth->add_option("--name", synth_args.file_name, "output file name");

    PrepArgs prep_args;
    CLI::App* prep = app.add_subcommand("prep", "preprocess a CSV into train/test matrices");
    prep->add_option("--input", prep_args.input, "input CSV")->required();
    prep->add_option("--schema", prep_args.schema, "schema file (key=value)");
    prep->add_option("--policy", prep_args.policy, "imputation policy")
        ->check(CLI::IsMember({"mean-median", "leave-empty"}));
    prep->add_option("--out", prep_args.out, "output directory")->required();
    prep->add_option("--test-ratio", prep_args.test_ratio, "held-out fraction");
    prep->add_option("--split-seed", prep_args.split_seed, "split seed");

    TsneArgs tsne_args;
    CLI::App* tsne = app.add_subcommand("tsne", "dataset comparability embedding");
    tsne->add_option("--inputs", tsne_args.inputs, "input CSVs")->required()->expected(2, -1);
    tsne->add_option("--schema", tsne_args.schema, "schema file shared by all inputs");
    tsne->add_option("--out", tsne_args.out, "output directory")->required();
    tsne->add_option("--seed", tsne_args.seed, "embedding seed");
    tsne->add_option("--iterations", tsne_args.iterations, "gradient-descent iterations");
    tsne->add_option("--learning-rate", tsne_args.learning_rate,
                     "gradient-descent step size (0 = auto)");
    tsne->add_option("--perplexity-cap", tsne_args.perplexity_cap, "perplexity cap");

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "train and evaluate one configuration");
    run->add_option("--train", run_args.train_path, "training design matrix CSV")->required();
    run->add_option("--test", run_args.test_path, "test design matrix CSV")->required();
    run->add_option("--encoding", run_args.encoding, "data encoding")
        ->check(CLI::IsMember({"amplitude", "angle", "basis", "iqp", "qsample"}));
    run->add_option("--arch", run_args.architecture, "entanglement architecture")
        ->check(CLI::IsMember({"basic", "ring", "star", "strong", "alternating"}));
    run->add_option("--measure", run_args.measurement, "measurement observable")
        ->check(CLI::IsMember({"pauli-x", "pauli-y", "pauli-z", "pauli-xyz", "hadamard"}));
    run->add_option("--shots", run_args.shots, "shot count or 'analytic'");
    run->add_option("--out", run_args.out, "output directory")->required();
    run->add_option("--seed", run_args.base_seed, "base seed");
    run->add_option("--epochs", run_args.epochs, "training epochs");
    run->add_option("--batch-size", run_args.batch_size, "mini-batch size");
    run->add_option("--learning-rate", run_args.learning_rate, "Adam learning rate");
    run->add_option("--patience", run_args.patience, "early-stopping patience");
    run->add_option("--folds", run_args.folds, "cross-validation folds");
    run->add_option("--split-seed", run_args.split_seed, "fold split seed");
    run->add_option("--fold-workers", run_args.fold_workers, "concurrent folds");

    GridArgs grid_args;
    CLI::App* grid = app.add_subcommand("grid", "run a configuration sweep");
    grid->add_option("--spec", grid_args.spec_path, "grid spec file (defaults to the full grid)");
    grid->add_option("--train", grid_args.train_path, "training design matrix CSV")->required();
    grid->add_option("--test", grid_args.test_path, "test design matrix CSV")->required();
    grid->add_option("--out", grid_args.out, "output directory")->required();
    grid->add_option("--results", grid_args.results_name, "results file name");
    grid->add_option("--workers", grid_args.workers, "concurrent runs");
    grid->add_option("--fold-workers", grid_args.fold_workers, "concurrent folds per run");
    grid->add_flag("--resume", grid_args.resume, "skip runs already in the results file");

    AggregateArgs agg_args;
    CLI::App* aggregate = app.add_subcommand("aggregate", "export plot-ready CSV tables");
    aggregate->add_option("--results", agg_args.results_path, "results JSONL")->required();
    aggregate->add_option("--view", agg_args.view, "aggregation view")
        ->required()
        ->check(CLI::IsMember({"factor-means", "factor-dist", "overlap", "curves"}));
    aggregate->add_option("--out", agg_args.out, "output directory")->required();
    aggregate->add_option("--metrics", agg_args.metrics_csv,
                          "comma-separated metric list for the overlap view");
    aggregate->add_option("--top-k", agg_args.top_k, "overlap list depth");
    aggregate->add_option("--min-count", agg_args.min_count, "overlap recurrence threshold");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(synth_args);
        }
        if (prep->parsed()) {
            return cmd_prep(prep_args);
        }
        if (tsne->parsed()) {
            return cmd_tsne(tsne_args);
        }
        if (run->parsed()) {
            return cmd_run(run_args);
        }
        if (grid->parsed()) {
            return cmd_grid(grid_args);
        }
        if (aggregate->parsed()) {
            return cmd_aggregate(agg_args);
        }
        std::cerr << "no command given\n";
        return kExitUsage;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}

} // namespace hqnn::cli
