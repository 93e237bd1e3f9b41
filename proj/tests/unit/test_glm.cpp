#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "survboot/errors.hpp"
#include "survboot/glm.hpp"
#include "survboot/rng.hpp"

using namespace survboot;

namespace {

Eigen::MatrixXd random_design(Eigen::Index n, Eigen::Index p, RngStream& rng) {
    Eigen::MatrixXd d(n, p);
    d.col(0).setOnes();
    for (Eigen::Index j = 1; j < p; ++j)
        for (Eigen::Index i = 0; i < n; ++i) d(i, j) = rng.normal();
    return d;
}

double logistic_score_max(const Eigen::MatrixXd& design,
                          const Eigen::VectorXd& y,
                          const Eigen::VectorXd& beta) {
    const Eigen::VectorXd lp = design * beta;
    const Eigen::VectorXd mu = (1.0 / (1.0 + (-lp.array()).exp())).matrix();
    return (design.transpose() * (y - mu)).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("fit_linear interpolates exactly linear data") {
    RngStream rng(201, 0);
    const Eigen::MatrixXd d = random_design(30, 3, rng);
    Eigen::VectorXd truth(3);
    truth << 1.5, -2.0, 0.25;
    const GlmFit fit = fit_linear(d, d * truth);
    CHECK(fit.converged);
    CHECK((fit.coefficients - truth).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fit_linear intercept-only returns the mean") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Ones(5, 1);
    Eigen::VectorXd y(5);
    y << 1, 2, 3, 4, 10;
    const GlmFit fit = fit_linear(d, y);
    CHECK(fit.coefficients(0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("fit_linear matches an independent dense solve") {
    RngStream rng(202, 0);
    const Eigen::MatrixXd d = random_design(50, 4, rng);
    Eigen::VectorXd y(50);
    for (Eigen::Index i = 0; i < 50; ++i) y(i) = rng.normal();
    const GlmFit fit = fit_linear(d, y);
    const Eigen::VectorXd oracle =
        d.colPivHouseholderQr().solve(y);
    CHECK((fit.coefficients - oracle).cwiseAbs().maxCoeff() < 1e-8);
    // residuals orthogonal to every design column
    const Eigen::VectorXd r = y - d * fit.coefficients;
    CHECK((d.transpose() * r).cwiseAbs().maxCoeff() < 1e-8);
    // fitted values agree with the hat-matrix projection
    const Eigen::MatrixXd hat =
        d * (d.transpose() * d).ldlt().solve(d.transpose());
    CHECK((predict_response(fit, d) - hat * y).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fit_linear rejects collinear designs") {
    Eigen::MatrixXd d(6, 3);
    d.col(0).setOnes();
    for (Eigen::Index i = 0; i < 6; ++i) d(i, 1) = double(i);
    d.col(2) = 2.0 * d.col(1);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(6);
    CHECK_THROWS_AS(fit_linear(d, y), RankDeficient);
}

TEST_CASE("fit_logistic intercept-only matches the log odds") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Ones(10, 1);
    Eigen::VectorXd y(10);
    y << 1, 1, 1, 0, 0, 0, 0, 0, 0, 0;
    const GlmFit fit = fit_logistic(d, y);
    CHECK(fit.converged);
    CHECK(fit.coefficients(0) ==
          doctest::Approx(std::log(0.3 / 0.7)).epsilon(1e-6));
}

TEST_CASE("fit_logistic 2x2 table recovers the sample log odds ratio") {
    // x=0: 8 of 20 positive; x=1: 15 of 20 positive
    Eigen::MatrixXd d(40, 2);
    Eigen::VectorXd y(40);
    for (Eigen::Index i = 0; i < 40; ++i) {
        d(i, 0) = 1.0;
        d(i, 1) = i < 20 ? 0.0 : 1.0;
        y(i) = (i < 8 || (i >= 20 && i < 35)) ? 1.0 : 0.0;
    }
    const GlmFit fit = fit_logistic(d, y);
    CHECK(fit.converged);
    const double lor = std::log((15.0 / 5.0) / (8.0 / 12.0));
    CHECK(fit.coefficients(1) == doctest::Approx(lor).epsilon(1e-6));
    CHECK(fit.coefficients(0) ==
          doctest::Approx(std::log(8.0 / 12.0)).epsilon(1e-6));
}

TEST_CASE("perfect separation is flagged as non-converged") {
    Eigen::MatrixXd d(8, 2);
    Eigen::VectorXd y(8);
    for (Eigen::Index i = 0; i < 8; ++i) {
        d(i, 0) = 1.0;
        d(i, 1) = double(i);
        y(i) = i < 4 ? 0.0 : 1.0;
    }
    const GlmFit fit = fit_logistic(d, y);
    CHECK_FALSE(fit.converged);
}

TEST_CASE("converged logistic fits have max score below 1e-6") {
    RngStream rng(203, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::MatrixXd d = random_design(80, 3, rng);
        Eigen::VectorXd beta(3);
        beta << -0.2, 0.7, -0.4;
        const Eigen::VectorXd lp = d * beta;
        Eigen::VectorXd y(80);
        for (Eigen::Index i = 0; i < 80; ++i)
            y(i) = rng.bernoulli(1.0 / (1.0 + std::exp(-lp(i)))) ? 1.0 : 0.0;
        const GlmFit fit = fit_logistic(d, y);
        if (fit.converged)
            CHECK(logistic_score_max(d, y, fit.coefficients) < 1e-6);
    }
}

TEST_CASE("predict_response trivial cases") {
    GlmFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd d(3, 2);
    d << 1, 1, 1, 2, 1, 3;
    fit.link = Link::Logit;
    CHECK((predict_response(fit, d).array() == 0.5).all());
    fit.link = Link::Identity;
    CHECK((predict_response(fit, d).array() == 0.0).all());
}

TEST_CASE("predict_response checks dimensions") {
    GlmFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(predict_response(fit, Eigen::MatrixXd::Ones(2, 2)),
                    DimensionMismatch);
}
