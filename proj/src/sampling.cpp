#include "survboot/sampling.hpp"

#include "survboot/errors.hpp"
#include "survboot/linalg.hpp"

namespace survboot {

Eigen::MatrixXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& cov, Eigen::Index n,
                           RngStream& rng) {
    const Eigen::Index p = mean.size();
    if (cov.rows() != p || cov.cols() != p)
        throw DimensionMismatch("sample_mvn: cov shape does not match mean");
    const Eigen::MatrixXd l = cholesky(cov);
    Eigen::MatrixXd out(n, p);
    Eigen::VectorXd z(p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) z(j) = rng.normal();
        out.row(i) = (mean + l * z).transpose();
    }
    return out;
}

Eigen::VectorXd sample_weibull(double shape, double scale, Eigen::Index n,
                               RngStream& rng) {
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = rng.weibull(shape, scale);
    return out;
}

Eigen::VectorXd sample_uniform(Eigen::Index n, RngStream& rng) {
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = rng.uniform();
    return out;
}

Eigen::VectorXi sample_bernoulli(const Eigen::VectorXd& p, RngStream& rng) {
    Eigen::VectorXi out(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i)
        out(i) = rng.bernoulli(p(i)) ? 1 : 0;
    return out;
}

} // namespace survboot
