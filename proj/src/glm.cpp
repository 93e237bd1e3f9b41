#include "survboot/glm.hpp"

#include <cmath>

#include "survboot/errors.hpp"
#include "survboot/linalg.hpp"

namespace survboot {

namespace {

constexpr int kMaxIter = 25;
constexpr int kMaxHalvings = 10;
constexpr double kScoreTol = 1e-8;
constexpr double kLoglikRelTol = 1e-10;
// Linear predictors beyond this saturate the likelihood; treated as
// separation.
constexpr double kSeparationLp = 30.0;

double bernoulli_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& lp) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        // log(p) = lp - log(1+exp(lp)), log(1-p) = -log(1+exp(lp))
        const double log1pe =
            lp(i) > 0 ? lp(i) + std::log1p(std::exp(-lp(i)))
                      : std::log1p(std::exp(lp(i)));
        ll += y(i) * lp(i) - log1pe;
    }
    return ll;
}

} // namespace

GlmFit fit_linear(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
    if (design.rows() != y.size())
        throw DimensionMismatch("fit_linear: rows mismatch");
    if (design.rows() < design.cols())
        throw RankDeficient("fit_linear: fewer rows than columns");
    GlmFit fit;
    fit.link = Link::Identity;
    const Eigen::MatrixXd xtx = design.transpose() * design;
    const Eigen::VectorXd xty = design.transpose() * y;
    try {
        fit.coefficients = solve_spd(xtx, xty);
    } catch (const NotPositiveDefinite&) {
        throw RankDeficient("fit_linear: collinear design");
    }
    fit.converged = true;
    fit.iterations = 1;
    fit.n_used = design.rows();
    return fit;
}

GlmFit fit_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
    if (design.rows() != y.size())
        throw DimensionMismatch("fit_logistic: rows mismatch");
    if (design.rows() < design.cols())
        throw RankDeficient("fit_logistic: fewer rows than columns");
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y(i) != 0.0 && y(i) != 1.0)
            throw DimensionMismatch("fit_logistic: response not binary");

    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    GlmFit fit;
    fit.link = Link::Logit;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd lp = Eigen::VectorXd::Zero(n);
    double ll = bernoulli_loglik(y, lp);

    for (int iter = 1; iter <= kMaxIter; ++iter) {
        fit.iterations = iter;
        Eigen::VectorXd prob(n), w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            prob(i) = 1.0 / (1.0 + std::exp(-lp(i)));
            w(i) = std::max(prob(i) * (1.0 - prob(i)), 1e-12);
        }
        const Eigen::VectorXd score = design.transpose() * (y - prob);
        const Eigen::MatrixXd info =
            design.transpose() * w.asDiagonal() * design;

        Eigen::VectorXd step;
        try {
            step = solve_spd(info, score);
        } catch (const NotPositiveDefinite&) {
            throw RankDeficient("fit_logistic: singular weighted design");
        }

        double scale = 1.0;
        Eigen::VectorXd lp_new = lp + design * step;
        double ll_new = bernoulli_loglik(y, lp_new);
        for (int h = 0; h < kMaxHalvings && !(ll_new >= ll); ++h) {
            scale *= 0.5;
            lp_new = lp + scale * (design * step);
            ll_new = bernoulli_loglik(y, lp_new);
        }
        beta += scale * step;
        lp = lp_new;

        const double max_score = score.cwiseAbs().maxCoeff();
        const bool small_score = max_score < kScoreTol;
        const bool small_change =
            std::abs(ll_new - ll) < kLoglikRelTol * (std::abs(ll) + 1.0) &&
            max_score < 1e-6;
        ll = ll_new;
        if (small_score || small_change) {
            fit.converged = lp.cwiseAbs().maxCoeff() < kSeparationLp;
            break;
        }
    }
    fit.coefficients = beta;
    fit.n_used = n;
    if (lp.cwiseAbs().maxCoeff() >= kSeparationLp) fit.converged = false;
    return fit;
}

Eigen::VectorXd predict_response(const GlmFit& fit,
                                 const Eigen::MatrixXd& design) {
    if (design.cols() != fit.coefficients.size())
        throw DimensionMismatch("predict_response: column count mismatch");
    Eigen::VectorXd lp = design * fit.coefficients;
    if (fit.link == Link::Identity) return lp;
    for (Eigen::Index i = 0; i < lp.size(); ++i)
        lp(i) = 1.0 / (1.0 + std::exp(-lp(i)));
    return lp;
}

} // namespace survboot
