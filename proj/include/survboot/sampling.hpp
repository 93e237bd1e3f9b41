#pragma once

#include <Eigen/Core>

#include "survboot/rng.hpp"

namespace survboot {

/// n i.i.d. draws from N(mean, cov), one per row. Draws are mean + L z
/// with L the lower Cholesky factor of cov.
Eigen::MatrixXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& cov, Eigen::Index n,
                           RngStream& rng);

/// n draws with survival function S(t) = exp(-(t/scale)^shape).
/// scale is the characteristic life (the 63.2% quantile).
Eigen::VectorXd sample_weibull(double shape, double scale, Eigen::Index n,
                               RngStream& rng);

/// n uniform draws on [0, 1).
Eigen::VectorXd sample_uniform(Eigen::Index n, RngStream& rng);

/// n Bernoulli(p_i) draws, one per entry of p.
Eigen::VectorXi sample_bernoulli(const Eigen::VectorXd& p, RngStream& rng);

} // namespace survboot
