#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "survboot/cox.hpp"
#include "survboot/dataset.hpp"
#include "survboot/imputation.hpp"
#include "survboot/rng.hpp"

namespace survboot {

/// CC drops every row with a missing covariate; BI resamples the raw
/// data and re-runs deterministic imputation inside each bootstrap
/// sample.
enum class Approach { CC, BI };

std::string to_string(Approach a);
std::string to_string(const ImputationStrategy& s);

struct ValidationConfig {
    int n_boot = 500;
    double horizon = 5.0;
    ImputationStrategy strategy;
    Approach approach = Approach::BI;
    std::uint64_t seed = 0;
    std::vector<Eigen::Index> targets;     // covariates subject to missingness
    std::vector<Eigen::Index> predictors;  // always-complete covariates
};

struct EstimatorSet {
    double apparent = 0.0;
    double boot_corrected = 0.0;
    double e632 = 0.0;
    double e632plus = 0.0;
};

struct ValidationReport {
    EstimatorSet auc;
    EstimatorSet brier;
    int n_boot_used = 0;
    int boot_failures = 0;
    double gamma_auc = 0.5;
    double gamma_brier = 0.25;
};

/// Rich result: the report plus the apparent model and the dataset it
/// was developed on, for downstream prediction-bias computations.
struct ValidationResult {
    ValidationReport report;
    CoxFit apparent_fit;
    SurvivalDataset dat;                    // imputed (BI) or raw (CC) data
    std::vector<Eigen::Index> usable_rows;  // complete rows of dat
};

/// n draws with replacement; drawn rows keep their original ids.
/// oob_ids lists the ids absent from the sample, ascending.
std::pair<SurvivalDataset, std::vector<int>> bootstrap_sample(
    const SurvivalDataset& data, RngStream& rng);

/// apparent minus the mean bootstrap-vs-original performance gap.
double boot_corrected(double app, const std::vector<double>& b_perf,
                      const std::vector<double>& o_perf);

/// 0.368 * apparent + 0.632 * mean out-of-bag performance.
double e632(double app, const std::vector<double>& test_perf);

/// .632+ with relative overfitting rate R = (mean(test) - app) /
/// (gamma - app); R is not clamped. Throws DegenerateNoInformation when
/// gamma equals the apparent performance.
double e632plus(double app, const std::vector<double>& test_perf,
                double gamma);

/// Full internal validation of the four estimators, in
/// bootstrap-then-impute order for the BI approach. Deterministic given
/// (raw, config.seed). Throws AnalysisModelFailure when the apparent
/// model cannot be fit and AllBootstrapsFailed when no bootstrap
/// iteration survives.
ValidationResult validate(const SurvivalDataset& raw,
                          const ValidationConfig& config);

/// Covariate columns of `data` that contain at least one missing cell.
std::vector<Eigen::Index> infer_targets(const SurvivalDataset& data);
std::vector<Eigen::Index> infer_complete_columns(const SurvivalDataset& data);

std::string report_csv_header();
std::string report_csv_row(Approach approach, const ImputationStrategy& strategy,
                           const ValidationReport& r);

} // namespace survboot
