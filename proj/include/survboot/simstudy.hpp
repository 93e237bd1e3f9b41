#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "survboot/datagen.hpp"
#include "survboot/validation.hpp"

namespace survboot {

/// One cell of the simulation grid.
struct ScenarioSpec {
    DgpConfig dgp;                 // dgp.n selects the sample size
    std::string pattern = "E";     // "A".."I", or "none" for no missingness
    ImputationStrategy strategy;
    Approach approach = Approach::BI;
    int n_sims = 50;
    int n_boot = 100;
    double horizon = 5.0;
    std::uint64_t master_seed = 0;
};

/// Per-replicate outcome: the four estimators of both metrics on the
/// full data and under the approach, their differences (full - approach),
/// and the mean individual prediction bias at the horizon.
struct BiasRecord {
    Eigen::Index n = 0;
    std::string pattern;
    std::string strategy;
    std::string approach;
    int replicate = 0;
    bool fit_ok = false;
    int full_boot_failures = 0;
    int approach_boot_failures = 0;
    EstimatorSet full_auc, full_brier;
    EstimatorSet approach_auc, approach_brier;
    EstimatorSet bias_auc, bias_brier;
    double pred_bias = 0.0;     // mean(full risk - approach risk)
    Eigen::Index n_pred = 0;    // subjects entering the prediction-bias mean
};

/// Generate data, compute the full-data reference, impose missingness,
/// run the approach, and difference estimator by estimator. Failures are
/// encoded as fit_ok = false, never thrown.
BiasRecord run_replicate(const ScenarioSpec& spec, int replicate_index);

/// All (spec, replicate) pairs, each with independent streams; output
/// ordered by (scenario position, replicate) regardless of the number of
/// worker threads.
std::vector<BiasRecord> run_grid(const std::vector<ScenarioSpec>& specs,
                                 int jobs = 1);

/// Per-scenario mean/SD of bias over the fit_ok replicates plus the
/// failure rate.
struct ScenarioSummary {
    Eigen::Index n = 0;
    std::string pattern;
    std::string strategy;
    std::string approach;
    int n_records = 0;
    int n_fit_ok = 0;
    double failure_rate = 0.0;
    // mean/sd per estimator, AUC then Brier; SD reported as 0 when only
    // one usable replicate exists.
    EstimatorSet mean_bias_auc, sd_bias_auc;
    EstimatorSet mean_bias_brier, sd_bias_brier;
    double mean_pred_bias = 0.0;
    double sd_pred_bias = 0.0;
};

std::vector<ScenarioSummary> summarize(const std::vector<BiasRecord>& records);

std::string bias_csv_header();
std::string bias_csv_row(const BiasRecord& r);
std::vector<BiasRecord> read_bias_csv(std::istream& is);

std::string summary_csv_header();
std::string summary_csv_row(const ScenarioSummary& s);

} // namespace survboot
