// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace hqnn::metrics {

/// Confusion counts at one decision threshold; the root of all metrics.
struct ConfusionCounts {
    long tp = 0;
    long tn = 0;
    long fp = 0;
    long fn = 0;
    long total() const { return tp + tn + fp + fn; }
};

/// Predict 1 iff p >= threshold, count against labels.
/// ValidationError on length mismatch or empty input.
ConfusionCounts confusion(std::span<const int> labels, std::span<const double> probabilities,
                          double threshold);

/// Ratio metrics with a zero-denominator policy: undefined ratios come back
/// as 0 with `degenerate` set, so degenerate configurations stay rankable.
struct PointMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0; ///< sensitivity / TPR
    double specificity = 0.0;
    double f1 = 0.0;
    double balanced_accuracy = 0.0;
    bool degenerate = false;
};

PointMetrics point_metrics(const ConfusionCounts& c);

/// Matthews correlation coefficient; returns 0 (random-prediction
/// convention) when any denominator factor vanishes.
double mcc(const ConfusionCounts& c);

/// Area under the ROC curve via ranks; ties contribute 0.5.
/// MetricError when only one class is present.
double auc(std::span<const int> labels, std::span<const double> probabilities);

/// Harmonic mean; any component <= 0 collapses the mean to 0.
double harmonic_mean(std::span<const double> components);

struct GpsScores {
    double gps1 = 0.0; ///< balanced accuracy, AUC, F1
    double gps2 = 0.0; ///< accuracy, precision, recall, F1
    double gps3 = 0.0; ///< balanced accuracy, AUC, test accuracy
    double gps4 = 0.0; ///< balanced accuracy, AUC, F1, CV accuracy mean
};

GpsScores gps(const PointMetrics& point, double auc_value, double cv_accuracy_mean);

/// Full scalar report at the default decision threshold. mcc_f1 is the
/// harmonic mean of MCC and F1 at that threshold and sens_spec is balanced
/// accuracy; both are the single-number reductions used by the overlap
/// ranking (configurable there).
struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double specificity = 0.0;
    double balanced_accuracy = 0.0;
    double f1 = 0.0;
    double mcc = 0.0;
    double auc = 0.0;
    double mcc_f1 = 0.0;
    double sens_spec = 0.0;
    double gps1 = 0.0;
    double gps2 = 0.0;
    double gps3 = 0.0;
    double gps4 = 0.0;
    double cv_accuracy_mean = 0.0;
    bool degenerate = false;
};

MetricsReport evaluate_report(std::span<const int> labels, std::span<const double> probabilities,
                              double cv_accuracy_mean, double threshold = 0.5);

/// Canonical metric names accepted by `metric_value` and the aggregation
/// views.
std::vector<std::string_view> metric_names();

/// Look up a report field by canonical name; MetricError on unknown names.
double metric_value(const MetricsReport& report, std::string_view name);

enum class CurveKind { MccF1, SensSpec, Roc };

std::string_view to_string(CurveKind kind);

/// Metric pairs swept over evenly spaced thresholds in [0, 1]:
///   MccF1:    x = F1, y = MCC
///   SensSpec: x = specificity, y = sensitivity
///   Roc:      x = FPR, y = TPR
struct ThresholdCurve {
    CurveKind kind = CurveKind::MccF1;
    std::vector<double> thresholds;
    std::vector<double> x_values;
    std::vector<double> y_values;
};

ThresholdCurve threshold_curve(std::span<const int> labels,
                               std::span<const double> probabilities, CurveKind kind,
                               int n_thresholds = 101);

} // namespace hqnn::metrics
