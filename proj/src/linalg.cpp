#include "survboot/linalg.hpp"

#include <cmath>

#include "survboot/errors.hpp"

namespace survboot {

namespace {
constexpr double kPivotTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;
} // namespace

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw DimensionMismatch("cholesky: matrix not square");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
        throw DimensionMismatch("cholesky: matrix not symmetric");

    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
        if (pivot <= kPivotTol)
            throw NotPositiveDefinite("cholesky: pivot <= 1e-12 at column " +
                                      std::to_string(j));
        l(j, j) = std::sqrt(pivot);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
        }
    }
    return l;
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    if (a.rows() != b.size())
        throw DimensionMismatch("solve_spd: size mismatch");
    const Eigen::MatrixXd l = cholesky(a);
    Eigen::VectorXd y =
        l.triangularView<Eigen::Lower>().solve(b);
    return l.transpose().triangularView<Eigen::Upper>().solve(y);
}

} // namespace survboot
