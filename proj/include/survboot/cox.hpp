#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <utility>
#include <vector>

namespace survboot {

/// Right-continuous step function over time; values are cumulative
/// hazards or survival probabilities depending on context.
struct StepFunction {
    std::vector<std::pair<double, double>> steps;  // strictly increasing times

    /// Value at the largest step time <= t, or `before` when t precedes
    /// every step.
    double at(double t, double before) const {
        auto it = std::upper_bound(
            steps.begin(), steps.end(), t,
            [](double lhs, const std::pair<double, double>& step) {
                return lhs < step.first;
            });
        return it == steps.begin() ? before : std::prev(it)->second;
    }

    /// Left limit: value at the largest step time strictly < t.
    double at_left(double t, double before) const {
        auto it = std::lower_bound(
            steps.begin(), steps.end(), t,
            [](const std::pair<double, double>& step, double rhs) {
                return step.first < rhs;
            });
        return it == steps.begin() ? before : std::prev(it)->second;
    }
};

/// Kaplan-Meier curve; survival starts at 1 before the first step.
struct KmCurve {
    StepFunction curve;
    double at(double t) const { return curve.at(t, 1.0); }
    double at_left(double t) const { return curve.at_left(t, 1.0); }
};

struct CoxFit {
    Eigen::VectorXd beta;
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    StepFunction baseline;  // cumulative baseline hazard at event times
};

/// Newton-Raphson maximization of the Efron-approximation partial
/// likelihood; at most 20 iterations with step-halving. Throws
/// SingularInformation when the information matrix cannot be solved and
/// NonConvergence when the iteration limit is reached. The Breslow
/// baseline is filled in on success.
CoxFit fit_cox(const Eigen::MatrixXd& x, const Eigen::VectorXd& s,
               const Eigen::VectorXi& delta);

/// Breslow cumulative baseline hazard: at each distinct event time,
/// increment d_t / sum over the risk set of exp(beta' x).
StepFunction breslow_baseline(const CoxFit& fit, const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& s,
                              const Eigen::VectorXi& delta);

/// Absolute event risk by horizon t: 1 - exp(-H0(t) * exp(beta' x)).
Eigen::VectorXd predict_risk(const CoxFit& fit, const Eigen::MatrixXd& x_new,
                             double t);

/// Reverse Kaplan-Meier: the censoring-survival function G(t) = P(C > t),
/// treating censorings as events and events as censored. At tied times
/// events precede censorings in risk-set accounting.
KmCurve km_censoring(const Eigen::VectorXd& s, const Eigen::VectorXi& delta);

} // namespace survboot
