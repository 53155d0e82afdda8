// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hqnn {

// Error taxonomy shared across the toolkit. The CLI maps these onto its
// exit-code contract: data-shaped failures exit 2, results-file corruption
// exits 3; usage errors never reach this layer.

/// Invalid configuration value (qubit count, shot count, grid axis, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented precondition.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Feature vector cannot be realized by the requested encoding.
class EncodingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Non-finite value where a finite real is required.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dataset-level failure: ingestion, imputation, splitting, stratification.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Metric undefined for the given inputs (e.g. AUC on single-class labels).
class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Persisted state (results files) is corrupt or inconsistent.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hqnn
