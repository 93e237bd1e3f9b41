#pragma once

#include <Eigen/Core>
#include <vector>

#include "survboot/dataset.hpp"
#include "survboot/glm.hpp"

namespace survboot {

/// The three deterministic imputation strategies.
struct ImputationStrategy {
    enum class Variant { All, OnlyHighMissing, OnlyFewMissing };

    Variant variant = Variant::All;
    double threshold = 0.10;     // OnlyHighMissing: impute targets missing > this
    Eigen::Index max_missing = 2; // OnlyFewMissing: impute subjects with <= this

    static ImputationStrategy all() { return {}; }
    static ImputationStrategy only_high_missing(double threshold = 0.10) {
        return {Variant::OnlyHighMissing, threshold, 2};
    }
    static ImputationStrategy only_few_missing(Eigen::Index max_missing = 2) {
        return {Variant::OnlyFewMissing, 0.10, max_missing};
    }
};

/// One independent model per target covariate. Predictors are the
/// always-complete covariates; the outcome never enters. When a model
/// cannot be fit (separation, collinearity), the observed marginal
/// mode/mean is used instead and the fallback is recorded.
struct ImputationModel {
    Eigen::Index target = 0;
    bool binary = false;
    GlmFit fit;
    bool usable = false;    // false -> fallback value is used
    double fallback = 0.0;  // observed mode (binary) or mean (continuous)
};

struct ImputationModelSet {
    std::vector<ImputationModel> models;
    std::vector<Eigen::Index> predictors;  // always-complete covariate columns
};

/// Rows that still contain missing cells after a strategy was applied.
/// Downstream model fitting drops them.
struct ResidualMissingReport {
    std::vector<Eigen::Index> rows;
};

/// Fit one GLM per target on the rows where that target is observed;
/// logit link for binary targets (observed values all in {0,1}),
/// identity otherwise. Throws EmptyTrainingSet when a target is missing
/// for every row.
ImputationModelSet fit_imputation_models(
    const SurvivalDataset& data, const std::vector<Eigen::Index>& targets,
    const std::vector<Eigen::Index>& complete_covs);

/// Replace missing cells with model predictions according to the
/// strategy. Binary predictions are thresholded at probability > 0.5.
/// Observed cells are never altered.
std::pair<SurvivalDataset, ResidualMissingReport> impute(
    const SurvivalDataset& data, const ImputationModelSet& models,
    const ImputationStrategy& strategy);

} // namespace survboot
