#pragma once

#include <stdexcept>
#include <string>

namespace normdebt {

// Input-side problems: bad manifest, bad data file, bad user arguments.
// The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems raised while analyzing an otherwise valid snapshot.
// The CLI maps these to exit code 3.
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ManifestParseError : ValidationError {
    using ValidationError::ValidationError;
};

// Carries "file:line" context for missing files and malformed rows.
struct DataFileError : ValidationError {
    using ValidationError::ValidationError;
};

struct DuplicateTableNameError : ValidationError {
    using ValidationError::ValidationError;
};

struct PrimaryKeyViolationError : ValidationError {
    using ValidationError::ValidationError;
};

struct UnknownTableError : ValidationError {
    using ValidationError::ValidationError;
};

struct UnknownColumnError : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidAttributeIndexError : AnalysisError {
    using AnalysisError::AnalysisError;
};

struct EmptyTableError : AnalysisError {
    using AnalysisError::AnalysisError;
};

struct NotADebtItemError : AnalysisError {
    using AnalysisError::AnalysisError;
};

struct InconsistentTableSetsError : AnalysisError {
    using AnalysisError::AnalysisError;
};

struct EmptyInputError : AnalysisError {
    using AnalysisError::AnalysisError;
};

} // namespace normdebt
