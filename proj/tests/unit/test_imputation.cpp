#include <doctest.h>

#include <cmath>

#include "survboot/datagen.hpp"
#include "survboot/errors.hpp"
#include "survboot/imputation.hpp"

using namespace survboot;

namespace {

SurvivalDataset pattern_e_data(Eigen::Index n, std::uint64_t seed) {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = n;
    RngStream gen(seed, 0);
    const SurvivalDataset complete = generate_dataset(cfg, gen);
    RngStream miss(seed, 1);
    return impose_missingness(complete, pattern_catalog().at("E"), miss);
}

const std::vector<Eigen::Index> kTargetsE{0, 2, 3};
const std::vector<Eigen::Index> kPredictorsE{1, 4, 5, 6, 7, 8, 9, 10};

} // namespace

TEST_CASE("worked pattern yields logit, identity, logit links") {
    const SurvivalDataset d = pattern_e_data(2000, 301);
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    REQUIRE(ms.models.size() == 3);
    CHECK(ms.models[0].binary);       // x1
    CHECK_FALSE(ms.models[1].binary); // x3 continuous
    CHECK(ms.models[2].binary);       // x4
    CHECK(ms.models[0].fit.link == Link::Logit);
    CHECK(ms.models[1].fit.link == Link::Identity);
    CHECK(ms.models[2].fit.link == Link::Logit);
    for (const auto& m : ms.models) CHECK(m.usable);
}

TEST_CASE("fully observed target trains on all rows") {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = 300;
    RngStream gen(302, 0);
    const SurvivalDataset d = generate_dataset(cfg, gen);
    const ImputationModelSet ms = fit_imputation_models(d, {2}, kPredictorsE);
    CHECK(ms.models[0].fit.n_used == 300);
}

TEST_CASE("constant binary target falls back to the observed mode") {
    SurvivalDataset d = pattern_e_data(200, 303);
    for (Eigen::Index i = 0; i < d.n(); ++i)
        if (!std::isnan(d.x(i, 0))) d.x(i, 0) = 1.0;
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    CHECK_FALSE(ms.models[0].usable);
    CHECK(ms.models[0].fallback == 1.0);
    // fallback is actually used
    const auto [imp, rep] = impute(d, ms, ImputationStrategy::all());
    for (Eigen::Index i = 0; i < d.n(); ++i) CHECK(imp.x(i, 0) == 1.0);
}

TEST_CASE("target missing for every row is rejected") {
    SurvivalDataset d = pattern_e_data(100, 304);
    for (Eigen::Index i = 0; i < d.n(); ++i) d.x(i, 0) = std::nan("");
    CHECK_THROWS_AS(fit_imputation_models(d, kTargetsE, kPredictorsE),
                    EmptyTrainingSet);
}

TEST_CASE("imputing complete data is the identity") {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = 150;
    RngStream gen(305, 0);
    const SurvivalDataset d = generate_dataset(cfg, gen);
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    for (const auto strat :
         {ImputationStrategy::all(), ImputationStrategy::only_high_missing(),
          ImputationStrategy::only_few_missing()}) {
        const auto [imp, rep] = impute(d, ms, strat);
        CHECK(rep.rows.empty());
        CHECK((imp.x - d.x).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("strategy All leaves no residual missingness") {
    const SurvivalDataset d = pattern_e_data(2000, 306);
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    const auto [imp, rep] = impute(d, ms, ImputationStrategy::all());
    CHECK(rep.rows.empty());
    CHECK(Eigen::Index(imp.complete_rows().size()) == imp.n());
    // observed cells bit-identical, binary imputations in {0,1}
    for (Eigen::Index i = 0; i < d.n(); ++i)
        for (Eigen::Index j = 0; j < d.n_cov(); ++j) {
            if (!std::isnan(d.x(i, j)))
                CHECK(imp.x(i, j) == d.x(i, j));
            else if (j == 0 || j == 3)
                CHECK((imp.x(i, j) == 0.0 || imp.x(i, j) == 1.0));
            else
                CHECK(std::isfinite(imp.x(i, j)));
        }
}

TEST_CASE("OnlyHighMissing skips the low-missingness target") {
    const SurvivalDataset d = pattern_e_data(5000, 307);
    REQUIRE(d.missing_fraction(0) < 0.10); // x1 ~ 5%
    REQUIRE(d.missing_fraction(2) > 0.10); // x3 ~ 15%
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    const auto [imp, rep] = impute(d, ms, ImputationStrategy::only_high_missing());
    CHECK(imp.missing_fraction(0) == d.missing_fraction(0));
    CHECK(imp.missing_fraction(2) == 0.0);
    CHECK(imp.missing_fraction(3) == 0.0);
    const double resid = double(rep.rows.size()) / double(d.n());
    CHECK(resid == doctest::Approx(d.missing_fraction(0)).epsilon(1e-12));
    CHECK(std::abs(resid - 0.05) < 0.02);
}

TEST_CASE("OnlyFewMissing imputes subjects with at most two holes") {
    const SurvivalDataset d = pattern_e_data(5000, 308);
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    const auto [imp, rep] = impute(d, ms, ImputationStrategy::only_few_missing());
    for (Eigen::Index i = 0; i < d.n(); ++i) {
        if (d.count_missing_in_row(i) <= 2)
            CHECK(imp.count_missing_in_row(i) == 0);
        else
            CHECK(imp.count_missing_in_row(i) == d.count_missing_in_row(i));
    }
    for (Eigen::Index r : rep.rows) CHECK(d.count_missing_in_row(r) > 2);
}

TEST_CASE("imputation is deterministic") {
    const SurvivalDataset d = pattern_e_data(1000, 309);
    const ImputationModelSet ms =
        fit_imputation_models(d, kTargetsE, kPredictorsE);
    const auto [a, ra] = impute(d, ms, ImputationStrategy::all());
    const auto [b, rb] = impute(d, ms, ImputationStrategy::all());
    CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ra.rows == rb.rows);
}
