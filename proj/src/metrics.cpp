#include "survboot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "survboot/errors.hpp"

namespace survboot {

HorizonStatus classify_at_horizon(double s, int delta, double t) {
    if (s > t) return HorizonStatus::Control;
    return delta == 1 ? HorizonStatus::Case : HorizonStatus::Censored;
}

double brier_score(const Eigen::VectorXd& risk, const Eigen::VectorXd& s,
                   const Eigen::VectorXi& delta, double t, const KmCurve& g) {
    const Eigen::Index n = s.size();
    if (risk.size() != n || delta.size() != n)
        throw DimensionMismatch("brier_score: length mismatch");
    const double gt = g.at(t);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        switch (classify_at_horizon(s(i), delta(i), t)) {
            case HorizonStatus::Case: {
                const double gs = g.at_left(s(i));
                if (gs <= 0.0)
                    throw ZeroWeight("brier_score: G(s-) = 0 for a case");
                total += (1.0 - risk(i)) * (1.0 - risk(i)) / gs;
                break;
            }
            case HorizonStatus::Control: {
                if (gt <= 0.0)
                    throw ZeroWeight("brier_score: G(t) = 0 at the horizon");
                total += risk(i) * risk(i) / gt;
                break;
            }
            case HorizonStatus::Censored:
                break;
        }
    }
    return total / double(n);
}

double auc_td(const Eigen::VectorXd& risk, const Eigen::VectorXd& s,
              const Eigen::VectorXi& delta, double t, const KmCurve& g) {
    const Eigen::Index n = s.size();
    if (risk.size() != n || delta.size() != n)
        throw DimensionMismatch("auc_td: length mismatch");

    struct Item {
        double risk;
        double weight;
        bool is_case;
    };
    std::vector<Item> items;
    items.reserve(std::size_t(n));
    const double gt = g.at(t);
    for (Eigen::Index i = 0; i < n; ++i) {
        switch (classify_at_horizon(s(i), delta(i), t)) {
            case HorizonStatus::Case: {
                const double gs = g.at_left(s(i));
                if (gs <= 0.0)
                    throw ZeroWeight("auc_td: G(s-) = 0 for a case");
                items.push_back({risk(i), 1.0 / gs, true});
                break;
            }
            case HorizonStatus::Control: {
                if (gt <= 0.0)
                    throw ZeroWeight("auc_td: G(t) = 0 at the horizon");
                items.push_back({risk(i), 1.0 / gt, false});
                break;
            }
            case HorizonStatus::Censored:
                break;
        }
    }

    double case_total = 0.0, control_total = 0.0;
    for (const auto& it : items) (it.is_case ? case_total : control_total) += it.weight;
    if (case_total == 0.0) throw NoCases("auc_td: no cases by the horizon");
    if (control_total == 0.0) throw NoControls("auc_td: no controls past the horizon");

    // Weighted Mann-Whitney over (case, control) pairs: sort by risk and
    // sweep, crediting ties 0.5.
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.risk < b.risk; });
    double concordant = 0.0;
    double controls_below = 0.0;
    std::size_t k = 0;
    while (k < items.size()) {
        const double r = items[k].risk;
        double case_w = 0.0, control_w = 0.0;
        while (k < items.size() && items[k].risk == r) {
            (items[k].is_case ? case_w : control_w) += items[k].weight;
            ++k;
        }
        concordant += case_w * (controls_below + 0.5 * control_w);
        controls_below += control_w;
    }
    return concordant / (case_total * control_total);
}

ScorePair score_at_horizon(const Eigen::VectorXd& risk,
                           const Eigen::VectorXd& s,
                           const Eigen::VectorXi& delta, double t) {
    const KmCurve g = km_censoring(s, delta);
    ScorePair out;
    out.horizon = t;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const auto c = classify_at_horizon(s(i), delta(i), t);
        if (c == HorizonStatus::Case) ++out.n_cases;
        if (c == HorizonStatus::Control) ++out.n_controls;
    }
    out.auc = auc_td(risk, s, delta, t, g);
    out.brier = brier_score(risk, s, delta, t, g);
    return out;
}

} // namespace survboot
