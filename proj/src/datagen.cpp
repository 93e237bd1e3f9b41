#include "survboot/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "survboot/errors.hpp"
#include "survboot/sampling.hpp"

namespace survboot {

DgpConfig DgpConfig::defaults() {
    DgpConfig c;
    c.mu.resize(11);
    c.mu << 0.6145, 57.6495, 2.3665, 0.4225, 0.1538, 0.2421, 0.4142, 0.8680,
        0.1695, 0.1636, 0.8891;
    c.sigma.resize(11, 11);
    c.sigma <<
        0.2370, -1.3349, 0.0812, 0.0247, 0.0298, 0.0134, 0.0280, -0.0069, 0.0039, 0.0002, 0.0223,
        -1.3349, 196.2990, 0.6471, -0.6314, -0.0759, 0.3167, -0.7944, 0.0156, -0.1261, 0.0294, -0.8057,
        0.0812, 0.6471, 1.0967, 0.0680, 0.0452, 0.0063, 0.0740, -0.0190, -0.0080, -0.0147, -0.0075,
        0.0247, -0.6314, 0.0680, 0.2441, 0.0063, -0.0089, 0.0468, -0.0581, 0.0484, 0.0003, -0.0139,
        0.0298, -0.0759, 0.0452, 0.0063, 0.1302, 0.0070, 0.0214, -0.0026, 0.0016, -0.0001, 0.0043,
        0.0134, 0.3167, 0.0063, -0.0089, 0.0070, 0.0558, -0.0015, 0.0050, -0.0026, 0.0003, 0.0000,
        0.0280, -0.7944, 0.0740, 0.0468, 0.0214, -0.0015, 0.2427, -0.0119, 0.0131, 0.0017, 0.0012,
        -0.0069, 0.0156, -0.0190, -0.0581, -0.0026, 0.0050, -0.0119, 0.1146, -0.0318, 0.0001, 0.0086,
        0.0039, -0.1261, -0.0080, 0.0484, 0.0016, -0.0026, 0.0131, -0.0318, 0.1408, 0.0050, -0.0267,
        0.0002, 0.0294, -0.0147, 0.0003, -0.0001, 0.0003, 0.0017, 0.0001, 0.0050, 0.1369, 0.0014,
        0.0223, -0.8057, -0.0075, -0.0139, 0.0043, 0.0000, 0.0012, 0.0086, -0.0267, 0.0014, 0.0986;
    c.binary_indices = {0, 3, 4, 6, 7, 8, 9, 10};
    c.log_hr.resize(11);
    c.log_hr << std::log(0.80), std::log(1.05), std::log(1.25), std::log(1.54),
        std::log(1.18), std::log(1.45), std::log(1.10), std::log(0.76),
        std::log(0.64), std::log(1.25), std::log(0.48);
    return c;
}

std::vector<Eigen::Index> MissingPattern::targets() const {
    std::vector<Eigen::Index> t;
    t.reserve(entries.size());
    for (const auto& e : entries) t.push_back(e.target);
    return t;
}

std::vector<Eigen::Index> MissingPattern::complete_columns(
    Eigen::Index n_cov) const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index j = 0; j < n_cov; ++j) {
        bool is_target = false;
        for (const auto& e : entries)
            if (e.target == j) is_target = true;
        if (!is_target) out.push_back(j);
    }
    return out;
}

Eigen::MatrixXd generate_covariates(const DgpConfig& config, RngStream& rng) {
    Eigen::MatrixXd x = sample_mvn(config.mu, config.sigma, config.n, rng);
    for (Eigen::Index j : config.binary_indices)
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            x(i, j) = x(i, j) > 0.5 ? 1.0 : 0.0;
    return x;
}

SurvivalTimes generate_survival(const Eigen::MatrixXd& covs,
                                const DgpConfig& config, RngStream& rng) {
    if (covs.cols() != config.log_hr.size())
        throw DimensionMismatch("generate_survival: covariate column count");
    const Eigen::Index n = covs.rows();
    SurvivalTimes out;
    out.s.resize(n);
    out.delta.resize(n);
    out.event_time.resize(n);
    out.cens_time.resize(n);
    const Eigen::VectorXd lp = covs * config.log_hr;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = rng.uniform_open();
        const double t = config.event_scale *
                         std::pow(-std::log(u) / std::exp(lp(i)),
                                  1.0 / config.event_shape);
        const double c = rng.weibull(config.cens_shape, config.cens_scale);
        out.event_time(i) = t;
        out.cens_time(i) = c;
        out.s(i) = std::min(t, c);
        out.delta(i) = t <= c ? 1 : 0;
    }
    return out;
}

SurvivalDataset generate_dataset(const DgpConfig& config, RngStream& rng) {
    SurvivalDataset d;
    d.x = generate_covariates(config, rng);
    const SurvivalTimes st = generate_survival(d.x, config, rng);
    d.s = st.s;
    d.delta = st.delta;
    d.id.resize(config.n);
    for (Eigen::Index i = 0; i < config.n; ++i) d.id(i) = int(i) + 1;
    return d;
}

double compute_gamma1(double p_j, double p_k, double p_joint) {
    const double p11 = p_joint;
    const double p10 = p_j - p_joint;
    const double p01 = p_k - p_joint;
    const double p00 = 1.0 - p10 - p01 - p11;
    if (p11 <= 0.0 || p10 <= 0.0 || p01 <= 0.0 || p00 <= 0.0)
        throw DegenerateCell("compute_gamma1: cross-tabulation cell <= 0");
    return std::log((p00 * p11) / (p10 * p01));
}

double compute_gamma0(double p_j, double gamma1, double p_k, double gamma2,
                      double xbar_l) {
    return std::log(p_j / (1.0 - p_j)) - gamma1 * p_k - gamma2 * xbar_l;
}

SurvivalDataset impose_missingness(const SurvivalDataset& data,
                                   const MissingPattern& pattern,
                                   RngStream& rng) {
    SurvivalDataset out = data;
    const Eigen::Index n = data.n();
    // Realized missingness indicator per covariate column.
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, data.n_cov());

    for (const auto& e : pattern.entries) {
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::isnan(data.x(i, e.target)))
                throw Error("impose_missingness: target column " +
                            std::to_string(e.target + 1) +
                            " already has missing values");

        double gamma1 = 0.0;
        double p_partner = 0.0;
        if (e.partner) {
            for (const auto& prev : pattern.entries)
                if (prev.target == *e.partner) p_partner = prev.marginal;
            gamma1 = compute_gamma1(e.marginal, p_partner, e.joint);
        }
        const double xbar = data.x.col(e.value_col).mean();
        const double gamma0 =
            compute_gamma0(e.marginal, gamma1, p_partner, e.gamma2, xbar);

        for (Eigen::Index i = 0; i < n; ++i) {
            const double mk = e.partner ? double(m(i, *e.partner)) : 0.0;
            const double lp = gamma0 + gamma1 * mk + e.gamma2 * data.x(i, e.value_col);
            const double p = 1.0 / (1.0 + std::exp(-lp));
            if (rng.bernoulli(p)) {
                m(i, e.target) = 1;
                out.x(i, e.target) = std::nan("");
            }
        }
    }
    return out;
}

namespace {

double joint_for(double pa, double pb) {
    // Marginal pair -> joint proportion lookup.
    const double lo = std::min(pa, pb), hi = std::max(pa, pb);
    struct Row { double lo, hi, joint; };
    static const Row table[] = {
        {0.05, 0.05, 0.01}, {0.05, 0.15, 0.02}, {0.15, 0.15, 0.05},
        {0.15, 0.30, 0.07}, {0.30, 0.30, 0.10}, {0.30, 0.60, 0.20},
        {0.60, 0.60, 0.40},
    };
    for (const auto& r : table)
        if (std::abs(r.lo - lo) < 1e-12 && std::abs(r.hi - hi) < 1e-12)
            return r.joint;
    throw Error("no joint missingness proportion for marginal pair");
}

// Fixed mechanism per covariate: partner column, value column, gamma2.
// x10's listed partner (x5) is never itself missing, so its indicator is
// identically zero and the entry carries no partner.
MissingEntry entry_x1(double p) { return {0, p, std::nullopt, 0.0, 1, std::log(1.05)}; }
MissingEntry entry_x3(double p, double p1) { return {2, p, 0, joint_for(p, p1), 4, std::log(0.80)}; }
MissingEntry entry_x4(double p, double p3) { return {3, p, 2, joint_for(p, p3), 5, std::log(0.70)}; }
MissingEntry entry_x7(double p, double p4) { return {6, p, 3, joint_for(p, p4), 7, std::log(0.90)}; }
MissingEntry entry_x10(double p) { return {9, p, std::nullopt, 0.0, 8, std::log(0.60)}; }
MissingEntry entry_x11(double p, double p10) { return {10, p, 9, joint_for(p, p10), 1, std::log(1.05)}; }

MissingPattern single(std::string label, double p1) {
    return {std::move(label), {entry_x1(p1)}};
}

MissingPattern triple(std::string label, double p1, double p3, double p4) {
    return {std::move(label), {entry_x1(p1), entry_x3(p3, p1), entry_x4(p4, p3)}};
}

MissingPattern sextet(std::string label, double p1, double p3, double p4,
                      double p7, double p10, double p11) {
    return {std::move(label),
            {entry_x1(p1), entry_x3(p3, p1), entry_x4(p4, p3),
             entry_x7(p7, p4), entry_x10(p10), entry_x11(p11, p10)}};
}

} // namespace

std::map<std::string, MissingPattern> pattern_catalog() {
    std::map<std::string, MissingPattern> cat;
    cat["A"] = single("A", 0.05);
    cat["B"] = single("B", 0.15);
    cat["C"] = single("C", 0.60);
    cat["D"] = triple("D", 0.05, 0.05, 0.05);
    cat["E"] = triple("E", 0.05, 0.15, 0.30);
    // The worked three-covariate setting uses joint 0.075 for (x3, x4)
    // instead of the generic 0.07 for the (0.15, 0.30) marginal pair.
    cat["E"].entries[2].joint = 0.075;
    cat["F"] = triple("F", 0.15, 0.30, 0.60);
    cat["G"] = sextet("G", 0.05, 0.05, 0.05, 0.05, 0.05, 0.05);
    cat["H"] = sextet("H", 0.05, 0.05, 0.15, 0.15, 0.30, 0.30);
    cat["I"] = sextet("I", 0.15, 0.15, 0.30, 0.30, 0.60, 0.60);
    return cat;
}

} // namespace survboot
