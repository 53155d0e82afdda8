// SPDX-License-Identifier: Apache-2.0
#include "hqnn/dse/records.hpp"

#include <fstream>

#include "json.hpp"

#include "hqnn/errors.hpp"

namespace hqnn::dse {

namespace {

using nlohmann::json;

json report_to_json(const metrics::MetricsReport& report) {
    json out;
    for (const auto name : metrics::metric_names()) {
        out[std::string(name)] = metrics::metric_value(report, name);
    }
    out["degenerate"] = report.degenerate;
    return out;
}

metrics::MetricsReport report_from_json(const json& in) {
    metrics::MetricsReport report;
    report.accuracy = in.at("accuracy").get<double>();
    report.precision = in.at("precision").get<double>();
    report.recall = in.at("recall").get<double>();
    report.specificity = in.at("specificity").get<double>();
    report.balanced_accuracy = in.at("balanced_accuracy").get<double>();
    report.f1 = in.at("f1").get<double>();
    report.mcc = in.at("mcc").get<double>();
    report.auc = in.at("auc").get<double>();
    report.mcc_f1 = in.at("mcc_f1").get<double>();
    report.sens_spec = in.at("sens_spec").get<double>();
    report.gps1 = in.at("gps1").get<double>();
    report.gps2 = in.at("gps2").get<double>();
    report.gps3 = in.at("gps3").get<double>();
    report.gps4 = in.at("gps4").get<double>();
    report.cv_accuracy_mean = in.at("cv_accuracy_mean").get<double>();
    report.degenerate = in.value("degenerate", false);
    return report;
}

json curve_to_json(const metrics::ThresholdCurve& curve) {
    return json{{"kind", std::string(metrics::to_string(curve.kind))},
                {"thresholds", curve.thresholds},
                {"x", curve.x_values},
                {"y", curve.y_values}};
}

metrics::ThresholdCurve curve_from_json(const json& in) {
    metrics::ThresholdCurve curve;
    const std::string kind = in.at("kind").get<std::string>();
    if (kind == "mcc-f1") {
        curve.kind = metrics::CurveKind::MccF1;
    } else if (kind == "sens-spec") {
        curve.kind = metrics::CurveKind::SensSpec;
    } else if (kind == "roc") {
        curve.kind = metrics::CurveKind::Roc;
    } else {
        throw IntegrityError("unknown curve kind: " + kind);
    }
    curve.thresholds = in.at("thresholds").get<std::vector<double>>();
    curve.x_values = in.at("x").get<std::vector<double>>();
    curve.y_values = in.at("y").get<std::vector<double>>();
    return curve;
}

} // namespace

std::string decisions_fingerprint() {
    // toolkit-level choices a reader needs to interpret the numbers
    return "ry-exp(-i*theta*Y/2);rot=rz.ry.rz;angle-scale=pi;basis-threshold=0.5;"
           "iqp-ring;qsample=ry(2asin(sqrt(x)));head=linear+sigmoid;loss=bce;"
           "refit=median-early-stop-epochs;mcc-f1=harmonic@0.5;sens-spec=balanced-acc@0.5;"
           "hadamard-shots=split-half";
}

std::string record_to_json_line(const RunRecord& record) {
    json folds = json::array();
    for (const FoldSummary& fold : record.folds) {
        folds.push_back(json{{"fold", fold.fold_index},
                             {"val_accuracy", fold.val_accuracy},
                             {"val_loss", fold.val_loss},
                             {"epochs_ran", fold.epochs_ran}});
    }
    json curves = json::array();
    for (const auto& curve : record.curves) {
        curves.push_back(curve_to_json(curve));
    }
    const json out{{"schema_version", record.schema_version},
                   {"run_id", record.run_id},
                   {"run_index", record.run_index},
                   {"config",
                    json{{"encoding", std::string(encode::to_string(record.config.encoding))},
                         {"architecture",
                          std::string(ansatz::to_string(record.config.architecture))},
                         {"measurement",
                          std::string(model::to_string(record.config.measurement))},
                         {"shots", shots_token(record.config.shot_plan)},
                         {"n_qubits", record.config.n_qubits()},
                         {"n_layers", record.config.n_layers}}},
                   {"param_count", record.param_count},
                   {"seeds", json{{"base_seed", record.base_seed}, {"run_seed", record.run_seed}}},
                   {"folds", folds},
                   {"cv_accuracy_mean", record.cv_accuracy_mean},
                   {"refit_epochs", record.refit_epochs},
                   {"metrics", report_to_json(record.report)},
                   {"curves", curves},
                   {"wall_time_seconds", record.wall_time_seconds},
                   {"status", record.status},
                   {"error", record.error},
                   {"decisions", record.decisions}};
    return out.dump();
}

RunRecord record_from_json_line(const std::string& line, std::size_t line_number) {
    json in;
    try {
        in = json::parse(line);
    } catch (const json::exception& e) {
        throw IntegrityError("results line " + std::to_string(line_number) +
                             ": invalid JSON (" + e.what() + ")");
    }
    try {
        RunRecord record;
        record.schema_version = in.at("schema_version").get<int>();
        if (record.schema_version != kResultsSchemaVersion) {
            throw IntegrityError("results line " + std::to_string(line_number) +
                                 ": unsupported schema version " +
                                 std::to_string(record.schema_version));
        }
        record.run_id = in.at("run_id").get<std::string>();
        record.run_index = in.at("run_index").get<int>();

        const json& config = in.at("config");
        const auto encoding =
            encode::encoding_from_string(config.at("encoding").get<std::string>());
        const auto architecture =
            ansatz::architecture_from_string(config.at("architecture").get<std::string>());
        const auto measurement =
            model::measurement_from_string(config.at("measurement").get<std::string>());
        if (!encoding || !architecture || !measurement) {
            throw IntegrityError("results line " + std::to_string(line_number) +
                                 ": unknown config token");
        }
        record.config.encoding = *encoding;
        record.config.architecture = *architecture;
        record.config.measurement = *measurement;
        record.config.shot_plan = parse_shots_token(config.at("shots").get<std::string>());
        record.config.n_layers = config.at("n_layers").get<int>();

        record.param_count = in.at("param_count").get<int>();
        record.base_seed = in.at("seeds").at("base_seed").get<std::uint64_t>();
        record.run_seed = in.at("seeds").at("run_seed").get<std::uint64_t>();
        for (const json& fold : in.at("folds")) {
            record.folds.push_back(FoldSummary{fold.at("fold").get<int>(),
                                               fold.at("val_accuracy").get<double>(),
                                               fold.at("val_loss").get<double>(),
                                               fold.at("epochs_ran").get<int>()});
        }
        record.cv_accuracy_mean = in.at("cv_accuracy_mean").get<double>();
        record.refit_epochs = in.at("refit_epochs").get<int>();
        record.status = in.at("status").get<std::string>();
        record.error = in.value("error", "");
        record.decisions = in.value("decisions", "");
        if (record.status == "ok") {
            record.report = report_from_json(in.at("metrics"));
            for (const json& curve : in.at("curves")) {
                record.curves.push_back(curve_from_json(curve));
            }
        }
        record.wall_time_seconds = in.at("wall_time_seconds").get<double>();
        return record;
    } catch (const json::exception& e) {
        throw IntegrityError("results line " + std::to_string(line_number) +
                             ": missing or malformed field (" + e.what() + ")");
    } catch (const ConfigError& e) {
        throw IntegrityError("results line " + std::to_string(line_number) + ": " + e.what());
    }
}

void append_record_jsonl(const std::string& path, const RunRecord& record) {
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw DataError("cannot open results file for append: " + path);
    }
    out << record_to_json_line(record) << "\n";
}

std::vector<RunRecord> read_records_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open results file: " + path);
    }
    std::vector<RunRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        records.push_back(record_from_json_line(line, line_number));
    }
    return records;
}

} // namespace hqnn::dse
