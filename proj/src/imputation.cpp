#include "survboot/imputation.hpp"

#include <algorithm>
#include <cmath>

#include "survboot/errors.hpp"

namespace survboot {

namespace {

Eigen::MatrixXd design_for(const SurvivalDataset& data,
                           const std::vector<Eigen::Index>& predictors,
                           const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd d(Eigen::Index(rows.size()),
                      Eigen::Index(predictors.size()) + 1);
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
        const Eigen::Index i = rows[std::size_t(r)];
        d(r, 0) = 1.0;
        for (std::size_t c = 0; c < predictors.size(); ++c)
            d(r, Eigen::Index(c) + 1) = data.x(i, predictors[c]);
    }
    return d;
}

bool observed_values_binary(const SurvivalDataset& data, Eigen::Index col) {
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        const double v = data.x(i, col);
        if (!std::isnan(v) && v != 0.0 && v != 1.0) return false;
    }
    return true;
}

} // namespace

ImputationModelSet fit_imputation_models(
    const SurvivalDataset& data, const std::vector<Eigen::Index>& targets,
    const std::vector<Eigen::Index>& complete_covs) {
    for (Eigen::Index j : complete_covs)
        if (data.missing_fraction(j) > 0.0)
            throw Error("fit_imputation_models: predictor column " +
                        std::to_string(j + 1) + " has missing values");

    ImputationModelSet set;
    set.predictors = complete_covs;
    for (Eigen::Index t : targets) {
        std::vector<Eigen::Index> rows;
        for (Eigen::Index i = 0; i < data.n(); ++i)
            if (!std::isnan(data.x(i, t))) rows.push_back(i);
        if (rows.empty())
            throw EmptyTrainingSet("fit_imputation_models: target x" +
                                   std::to_string(t + 1) +
                                   " missing in every row");

        ImputationModel m;
        m.target = t;
        m.binary = observed_values_binary(data, t);

        Eigen::VectorXd y(Eigen::Index(rows.size()));
        for (std::size_t k = 0; k < rows.size(); ++k)
            y(Eigen::Index(k)) = data.x(rows[k], t);
        const Eigen::MatrixXd design = design_for(data, complete_covs, rows);

        if (m.binary) {
            const double mean = y.mean();
            m.fallback = mean > 0.5 ? 1.0 : 0.0;  // observed mode
            try {
                m.fit = fit_logistic(design, y);
                m.usable = m.fit.converged;
            } catch (const RankDeficient&) {
                m.usable = false;
            }
        } else {
            m.fallback = y.mean();
            try {
                m.fit = fit_linear(design, y);
                m.usable = m.fit.converged;
            } catch (const RankDeficient&) {
                m.usable = false;
            }
        }
        set.models.push_back(std::move(m));
    }
    return set;
}

std::pair<SurvivalDataset, ResidualMissingReport> impute(
    const SurvivalDataset& data, const ImputationModelSet& models,
    const ImputationStrategy& strategy) {
    SurvivalDataset out = data;

    // Row selection for the per-subject strategy.
    std::vector<bool> row_selected(std::size_t(data.n()), true);
    if (strategy.variant == ImputationStrategy::Variant::OnlyFewMissing) {
        for (Eigen::Index i = 0; i < data.n(); ++i)
            row_selected[std::size_t(i)] =
                data.count_missing_in_row(i) <= strategy.max_missing;
    }

    std::vector<Eigen::Index> all_rows(std::size_t(data.n()));
    for (Eigen::Index i = 0; i < data.n(); ++i) all_rows[std::size_t(i)] = i;
    const Eigen::MatrixXd full_design =
        design_for(data, models.predictors, all_rows);

    for (const auto& m : models.models) {
        if (strategy.variant == ImputationStrategy::Variant::OnlyHighMissing &&
            data.missing_fraction(m.target) <= strategy.threshold)
            continue;

        Eigen::VectorXd pred;
        if (m.usable) pred = predict_response(m.fit, full_design);
        for (Eigen::Index i = 0; i < data.n(); ++i) {
            if (!std::isnan(data.x(i, m.target))) continue;
            if (!row_selected[std::size_t(i)]) continue;
            double v = m.usable ? pred(i) : m.fallback;
            if (m.binary) v = v > 0.5 ? 1.0 : 0.0;
            out.x(i, m.target) = v;
        }
    }

    ResidualMissingReport report;
    for (Eigen::Index i = 0; i < out.n(); ++i)
        if (!out.row_complete(i)) report.rows.push_back(i);
    return {std::move(out), std::move(report)};
}

} // namespace survboot
