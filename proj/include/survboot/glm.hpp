#pragma once

#include <Eigen/Core>

namespace survboot {

enum class Link { Identity, Logit };

struct GlmFit {
    Link link = Link::Identity;
    Eigen::VectorXd coefficients;  // intercept first
    bool converged = false;
    int iterations = 0;
    Eigen::Index n_used = 0;
};

/// Least squares via the normal equations. Throws RankDeficient when the
/// cross-product matrix is not positive definite (collinear predictors).
/// The design is expected to carry an explicit intercept column.
GlmFit fit_linear(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

/// Logistic regression by IRLS with step-halving. Converges when the
/// max absolute score drops below 1e-8 or the relative log-likelihood
/// change drops below 1e-10; at most 25 iterations. Separation is a soft
/// failure: the fit is returned with converged=false.
GlmFit fit_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

/// Linear predictor for identity link, logistic(linear predictor) for
/// logit link.
Eigen::VectorXd predict_response(const GlmFit& fit,
                                 const Eigen::MatrixXd& design);

} // namespace survboot
