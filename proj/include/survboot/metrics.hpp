#pragma once

#include <Eigen/Core>

#include "survboot/cox.hpp"

namespace survboot {

enum class HorizonStatus { Case, Control, Censored };

/// Case if the event happened by t, Control if still at risk past t,
/// Censored if lost before t without an event.
HorizonStatus classify_at_horizon(double s, int delta, double t);

struct ScorePair {
    double auc = 0.0;
    double brier = 0.0;
    double horizon = 0.0;
    Eigen::Index n_cases = 0;
    Eigen::Index n_controls = 0;
};

/// IPCW Brier score at horizon t:
/// (1/n) sum over subjects of Case: (1-risk)^2 / G(s-), Control:
/// risk^2 / G(t); censored-before-t subjects contribute 0.
double brier_score(const Eigen::VectorXd& risk, const Eigen::VectorXd& s,
                   const Eigen::VectorXi& delta, double t, const KmCurve& g);

/// IPCW cumulative/dynamic time-dependent AUC at horizon t. Case weights
/// are 1/G(s-), control weights 1/G(t); tied risks count 0.5.
double auc_td(const Eigen::VectorXd& risk, const Eigen::VectorXd& s,
              const Eigen::VectorXi& delta, double t, const KmCurve& g);

/// Both metrics at once with G estimated on the scored data itself.
ScorePair score_at_horizon(const Eigen::VectorXd& risk,
                           const Eigen::VectorXd& s,
                           const Eigen::VectorXi& delta, double t);

} // namespace survboot
