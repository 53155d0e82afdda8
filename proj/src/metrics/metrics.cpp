// SPDX-License-Identifier: Apache-2.0
#include "hqnn/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hqnn/errors.hpp"

namespace hqnn::metrics {

namespace {

// 0-with-flag ratio; keeps degenerate confusion matrices rankable
double safe_ratio(double num, double den, bool& degenerate) {
    if (den == 0.0) {
        degenerate = true;
        return 0.0;
    }
    return num / den;
}

} // namespace

ConfusionCounts confusion(std::span<const int> labels, std::span<const double> probabilities,
                          double threshold) {
    if (labels.size() != probabilities.size()) {
        throw ValidationError("labels and probabilities must have equal length");
    }
    if (labels.empty()) {
        throw ValidationError("confusion counts need at least one sample");
    }
    if (threshold < 0.0 || threshold > 1.0) {
        throw ValidationError("threshold must lie in [0, 1]");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool predicted = probabilities[i] >= threshold;
        const bool actual = labels[i] == 1;
        if (predicted && actual) {
            ++c.tp;
        } else if (!predicted && !actual) {
            ++c.tn;
        } else if (predicted && !actual) {
            ++c.fp;
        } else {
            ++c.fn;
        }
    }
    return c;
}

PointMetrics point_metrics(const ConfusionCounts& c) {
    if (c.total() <= 0) {
        throw ValidationError("confusion counts are empty");
    }
    PointMetrics m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.precision = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp),
                             m.degenerate);
    m.recall =
        safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn), m.degenerate);
    m.specificity =
        safe_ratio(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fp), m.degenerate);
    m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall, m.degenerate);
    m.balanced_accuracy = (m.recall + m.specificity) / 2.0;
    return m;
}

double mcc(const ConfusionCounts& c) {
    if (c.total() <= 0) {
        throw ValidationError("confusion counts are empty");
    }
    const double tp = static_cast<double>(c.tp);
    const double tn = static_cast<double>(c.tn);
    const double fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn);
    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom == 0.0) {
        return 0.0;
    }
    return (tp * tn - fp * fn) / std::sqrt(denom);
}

double auc(std::span<const int> labels, std::span<const double> probabilities) {
    if (labels.size() != probabilities.size() || labels.empty()) {
        throw ValidationError("labels and probabilities must be non-empty and equal length");
    }
    std::size_t n_pos = 0;
    for (const int y : labels) {
        n_pos += y == 1 ? 1 : 0;
    }
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw MetricError("AUC is undefined with a single class");
    }

    // Mann-Whitney ranks with midranks for ties
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return probabilities[a] < probabilities[b];
    });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() &&
               probabilities[order[j + 1]] == probabilities[order[i]]) {
            ++j;
        }
        const double mid_rank = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) {
                rank_sum_pos += mid_rank;
            }
        }
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

double harmonic_mean(std::span<const double> components) {
    if (components.empty()) {
        throw ValidationError("harmonic mean of nothing");
    }
    double sum_inverse = 0.0;
    for (const double c : components) {
        if (c <= 0.0) {
            return 0.0;
        }
        sum_inverse += 1.0 / c;
    }
    return static_cast<double>(components.size()) / sum_inverse;
}

GpsScores gps(const PointMetrics& point, double auc_value, double cv_accuracy_mean) {
    GpsScores scores;
    const double g1[] = {point.balanced_accuracy, auc_value, point.f1};
    const double g2[] = {point.accuracy, point.precision, point.recall, point.f1};
    const double g3[] = {point.balanced_accuracy, auc_value, point.accuracy};
    const double g4[] = {point.balanced_accuracy, auc_value, point.f1, cv_accuracy_mean};
    scores.gps1 = harmonic_mean(g1);
    scores.gps2 = harmonic_mean(g2);
    scores.gps3 = harmonic_mean(g3);
    scores.gps4 = harmonic_mean(g4);
    return scores;
}

MetricsReport evaluate_report(std::span<const int> labels, std::span<const double> probabilities,
                              double cv_accuracy_mean, double threshold) {
    const ConfusionCounts c = confusion(labels, probabilities, threshold);
    const PointMetrics point = point_metrics(c);
    MetricsReport report;
    report.accuracy = point.accuracy;
    report.precision = point.precision;
    report.recall = point.recall;
    report.specificity = point.specificity;
    report.balanced_accuracy = point.balanced_accuracy;
    report.f1 = point.f1;
    report.mcc = mcc(c);
    report.auc = auc(labels, probabilities);
    const double mf[] = {report.mcc, report.f1};
    report.mcc_f1 = harmonic_mean(mf);
    report.sens_spec = point.balanced_accuracy;
    const GpsScores g = gps(point, report.auc, cv_accuracy_mean);
    report.gps1 = g.gps1;
    report.gps2 = g.gps2;
    report.gps3 = g.gps3;
    report.gps4 = g.gps4;
    report.cv_accuracy_mean = cv_accuracy_mean;
    report.degenerate = point.degenerate;
    return report;
}

std::vector<std::string_view> metric_names() {
    return {"accuracy", "precision", "recall",  "specificity", "balanced_accuracy",
            "f1",       "mcc",       "auc",     "mcc_f1",      "sens_spec",
            "gps1",     "gps2",      "gps3",    "gps4",        "cv_accuracy_mean"};
}

double metric_value(const MetricsReport& report, std::string_view name) {
    if (name == "accuracy") return report.accuracy;
    if (name == "precision") return report.precision;
    if (name == "recall") return report.recall;
    if (name == "specificity") return report.specificity;
    if (name == "balanced_accuracy") return report.balanced_accuracy;
    if (name == "f1") return report.f1;
    if (name == "mcc") return report.mcc;
    if (name == "auc") return report.auc;
    if (name == "mcc_f1") return report.mcc_f1;
    if (name == "sens_spec") return report.sens_spec;
    if (name == "gps1") return report.gps1;
    if (name == "gps2") return report.gps2;
    if (name == "gps3") return report.gps3;
    if (name == "gps4") return report.gps4;
    if (name == "cv_accuracy_mean") return report.cv_accuracy_mean;
    throw MetricError("unknown metric name: " + std::string(name));
}

std::string_view to_string(CurveKind kind) {
    switch (kind) {
    case CurveKind::MccF1:
        return "mcc-f1";
    case CurveKind::SensSpec:
        return "sens-spec";
    case CurveKind::Roc:
        return "roc";
    }
    return "?";
}

ThresholdCurve threshold_curve(std::span<const int> labels,
                               std::span<const double> probabilities, CurveKind kind,
                               int n_thresholds) {
    if (n_thresholds < 2) {
        throw ValidationError("threshold curve needs at least two thresholds");
    }
    ThresholdCurve curve;
    curve.kind = kind;
    curve.thresholds.reserve(static_cast<std::size_t>(n_thresholds));
    curve.x_values.reserve(static_cast<std::size_t>(n_thresholds));
    curve.y_values.reserve(static_cast<std::size_t>(n_thresholds));
    for (int i = 0; i < n_thresholds; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_thresholds - 1);
        const ConfusionCounts c = confusion(labels, probabilities, t);
        const PointMetrics m = point_metrics(c);
        curve.thresholds.push_back(t);
        switch (kind) {
        case CurveKind::MccF1:
            curve.x_values.push_back(m.f1);
            curve.y_values.push_back(mcc(c));
            break;
        case CurveKind::SensSpec:
            curve.x_values.push_back(m.specificity);
            curve.y_values.push_back(m.recall);
            break;
        case CurveKind::Roc:
            curve.x_values.push_back(1.0 - m.specificity);
            curve.y_values.push_back(m.recall);
            break;
        }
    }
    return curve;
}

} // namespace hqnn::metrics
