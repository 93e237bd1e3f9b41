#pragma once

#include <stdexcept>
#include <string>

namespace survboot {

// Base for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear algebra / configuration errors.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Inconsistent cross-tabulation inputs for the missingness odds ratio.
struct DegenerateCell : Error {
    using Error::Error;
};

// GLM fitting.
struct RankDeficient : Error {
    using Error::Error;
};

struct EmptyTrainingSet : Error {
    using Error::Error;
};

// Analysis-model failures: anything that makes a Cox fit or a scoring
// pass unusable for one dataset. Bootstrap iterations that hit these are
// counted and skipped.
struct AnalysisFailure : Error {
    using Error::Error;
};

struct SingularInformation : AnalysisFailure {
    using AnalysisFailure::AnalysisFailure;
};

struct NonConvergence : AnalysisFailure {
    using AnalysisFailure::AnalysisFailure;
};

// Metric errors.
struct ZeroWeight : AnalysisFailure {
    using AnalysisFailure::AnalysisFailure;
};

struct NoCases : AnalysisFailure {
    using AnalysisFailure::AnalysisFailure;
};

struct NoControls : AnalysisFailure {
    using AnalysisFailure::AnalysisFailure;
};

// Validation-level errors.
struct AnalysisModelFailure : Error {
    using Error::Error;
};

struct AllBootstrapsFailed : Error {
    using Error::Error;
};

struct DegenerateNoInformation : Error {
    using Error::Error;
};

} // namespace survboot
