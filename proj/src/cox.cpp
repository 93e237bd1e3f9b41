#include "survboot/cox.hpp"

#include <cmath>
#include <numeric>

#include "survboot/errors.hpp"
#include "survboot/linalg.hpp"

namespace survboot {

namespace {

constexpr int kMaxIter = 20;
constexpr int kMaxHalvings = 10;
constexpr double kLoglikRelTol = 1e-9;

// Row order by time descending so the risk set accumulates as we walk.
std::vector<Eigen::Index> order_desc(const Eigen::VectorXd& s) {
    std::vector<Eigen::Index> idx(std::size_t(s.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index(0));
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index a, Eigen::Index b) { return s(a) > s(b); });
    return idx;
}

/// Efron partial log-likelihood; gradient and expected information are
/// filled only when requested.
double efron_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& s,
                    const Eigen::VectorXi& delta,
                    const std::vector<Eigen::Index>& idx,
                    const Eigen::VectorXd& beta, Eigen::VectorXd* grad,
                    Eigen::MatrixXd* info) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    const bool derivs = grad != nullptr;
    const Eigen::VectorXd lp = x * beta;

    double ll = 0.0;
    double s0 = 0.0;
    Eigen::VectorXd s1;
    Eigen::MatrixXd s2;
    if (derivs) {
        grad->setZero(p);
        info->setZero(p, p);
        s1.setZero(p);
        s2.setZero(p, p);
    }

    Eigen::Index k = 0;
    while (k < n) {
        const double t = s(idx[std::size_t(k)]);
        // Add everyone at this time to the risk set, collect tied events.
        double s0t = 0.0;
        Eigen::VectorXd s1t;
        Eigen::MatrixXd s2t;
        if (derivs) {
            s1t.setZero(p);
            s2t.setZero(p, p);
        }
        int d = 0;
        double lp_events = 0.0;
        Eigen::VectorXd x_events;
        if (derivs) x_events.setZero(p);
        while (k < n && s(idx[std::size_t(k)]) == t) {
            const Eigen::Index i = idx[std::size_t(k)];
            const double w = std::exp(lp(i));
            s0 += w;
            if (derivs) {
                s1.noalias() += w * x.row(i).transpose();
                s2.noalias() += w * x.row(i).transpose() * x.row(i);
            }
            if (delta(i) == 1) {
                ++d;
                lp_events += lp(i);
                s0t += w;
                if (derivs) {
                    x_events += x.row(i).transpose();
                    s1t.noalias() += w * x.row(i).transpose();
                    s2t.noalias() += w * x.row(i).transpose() * x.row(i);
                }
            }
            ++k;
        }
        if (d == 0) continue;

        ll += lp_events;
        if (derivs) *grad += x_events;
        for (int l = 0; l < d; ++l) {
            const double phi = double(l) / double(d);
            const double d0 = s0 - phi * s0t;
            ll -= std::log(d0);
            if (derivs) {
                const Eigen::VectorXd mu = (s1 - phi * s1t) / d0;
                grad->noalias() -= mu;
                info->noalias() += (s2 - phi * s2t) / d0 - mu * mu.transpose();
            }
        }
    }
    return ll;
}

} // namespace

CoxFit fit_cox(const Eigen::MatrixXd& x, const Eigen::VectorXd& s,
               const Eigen::VectorXi& delta) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (s.size() != n || delta.size() != n)
        throw DimensionMismatch("fit_cox: row count mismatch");
    if (n <= p)
        throw SingularInformation("fit_cox: need more rows than covariates");
    if (delta.sum() == 0)
        throw SingularInformation("fit_cox: no events");

    const auto idx = order_desc(s);
    CoxFit fit;
    fit.beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd grad(p);
    Eigen::MatrixXd info(p, p);
    double ll = efron_loglik(x, s, delta, idx, fit.beta, &grad, &info);

    for (int iter = 1; iter <= kMaxIter; ++iter) {
        fit.iterations = iter;
        Eigen::VectorXd step;
        try {
            step = solve_spd(info, grad);
        } catch (const NotPositiveDefinite&) {
            throw SingularInformation("fit_cox: information matrix singular");
        }

        double scale = 1.0;
        Eigen::VectorXd beta_new = fit.beta + step;
        double ll_new = efron_loglik(x, s, delta, idx, beta_new, nullptr, nullptr);
        int h = 0;
        while (!(ll_new >= ll) && h < kMaxHalvings) {
            scale *= 0.5;
            beta_new = fit.beta + scale * step;
            ll_new = efron_loglik(x, s, delta, idx, beta_new, nullptr, nullptr);
            ++h;
        }
        if (!(ll_new >= ll)) {
            // A sub-tolerance decrease means we are sitting at the
            // optimum within floating-point noise.
            if (ll - ll_new < kLoglikRelTol * (std::abs(ll) + 1.0)) {
                fit.converged = true;
                break;
            }
            throw NonConvergence("fit_cox: step halving failed to improve");
        }

        fit.beta = beta_new;
        const bool done =
            std::abs(ll_new - ll) < kLoglikRelTol * (std::abs(ll) + 1.0);
        ll = efron_loglik(x, s, delta, idx, fit.beta, &grad, &info);
        if (done) {
            fit.converged = true;
            break;
        }
    }
    if (!fit.converged)
        throw NonConvergence("fit_cox: no convergence in 20 iterations");
    fit.loglik = ll;
    fit.baseline = breslow_baseline(fit, x, s, delta);
    return fit;
}

StepFunction breslow_baseline(const CoxFit& fit, const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& s,
                              const Eigen::VectorXi& delta) {
    const auto idx = order_desc(s);
    const Eigen::VectorXd lp = x * fit.beta;
    const Eigen::Index n = x.rows();

    // Walk descending, collect (time, d_t / S0) increments.
    std::vector<std::pair<double, double>> increments;
    double s0 = 0.0;
    Eigen::Index k = 0;
    while (k < n) {
        const double t = s(idx[std::size_t(k)]);
        int d = 0;
        while (k < n && s(idx[std::size_t(k)]) == t) {
            const Eigen::Index i = idx[std::size_t(k)];
            s0 += std::exp(lp(i));
            if (delta(i) == 1) ++d;
            ++k;
        }
        if (d > 0) increments.emplace_back(t, double(d) / s0);
    }

    StepFunction h0;
    double cum = 0.0;
    for (auto it = increments.rbegin(); it != increments.rend(); ++it) {
        cum += it->second;
        h0.steps.emplace_back(it->first, cum);
    }
    return h0;
}

Eigen::VectorXd predict_risk(const CoxFit& fit, const Eigen::MatrixXd& x_new,
                             double t) {
    const double h0 = fit.baseline.at(t, 0.0);
    Eigen::VectorXd lp = x_new * fit.beta;
    Eigen::VectorXd risk(lp.size());
    for (Eigen::Index i = 0; i < lp.size(); ++i)
        risk(i) = 1.0 - std::exp(-h0 * std::exp(lp(i)));
    return risk;
}

KmCurve km_censoring(const Eigen::VectorXd& s, const Eigen::VectorXi& delta) {
    const Eigen::Index n = s.size();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index(0));
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index a, Eigen::Index b) { return s(a) < s(b); });

    KmCurve g;
    double surv = 1.0;
    Eigen::Index at_risk = n;
    Eigen::Index k = 0;
    while (k < n) {
        const double t = s(idx[std::size_t(k)]);
        Eigen::Index d_event = 0, d_cens = 0;
        while (k < n && s(idx[std::size_t(k)]) == t) {
            if (delta(idx[std::size_t(k)]) == 1)
                ++d_event;
            else
                ++d_cens;
            ++k;
        }
        if (d_cens > 0) {
            // Events at the same time precede censorings, so they leave
            // the risk set first.
            const Eigen::Index y = at_risk - d_event;
            surv *= 1.0 - double(d_cens) / double(y);
            g.curve.steps.emplace_back(t, surv);
        }
        at_risk -= d_event + d_cens;
    }
    return g;
}

} // namespace survboot
