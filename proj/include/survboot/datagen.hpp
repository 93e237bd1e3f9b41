#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "survboot/dataset.hpp"
#include "survboot/rng.hpp"

namespace survboot {

/// Parameters of the synthetic survival data-generating process.
/// Defaults reproduce the reference setting: 11 covariates drawn from a
/// multivariate normal (binary ones thresholded at 0.5), Weibull event
/// times driven by a proportional-hazards linear predictor, and
/// independent Weibull censoring.
struct DgpConfig {
    Eigen::Index n = 3500;
    Eigen::VectorXd mu;         // covariate means, length 11
    Eigen::MatrixXd sigma;      // 11 x 11 covariance
    std::vector<Eigen::Index> binary_indices; // 0-based columns
    Eigen::VectorXd log_hr;     // log hazard ratios, length 11
    double event_shape = 1.6;
    double event_scale = 122.0;
    double cens_shape = 2.6;
    double cens_scale = 8.2;
    double horizon = 5.0;

    static DgpConfig defaults();
};

/// One covariate subjected to missingness. The probability of a missing
/// cell for subject i is logistic(gamma0 + gamma1 * M[partner] +
/// gamma2 * x[value_col]), where M[partner] is the realized missingness
/// indicator of an earlier entry (0 when partner is absent).
struct MissingEntry {
    Eigen::Index target;                  // 0-based covariate column
    double marginal;                      // target marginal proportion
    std::optional<Eigen::Index> partner;  // earlier target column, if any
    double joint;                         // joint proportion with partner
    Eigen::Index value_col;               // covariate entering the logit
    double gamma2;                        // its coefficient
};

struct MissingPattern {
    std::string label;
    std::vector<MissingEntry> entries;    // generation order

    std::vector<Eigen::Index> targets() const;
    /// Covariate columns never subject to missingness under this pattern.
    std::vector<Eigen::Index> complete_columns(Eigen::Index n_cov) const;
};

/// MVN covariate draws with binary columns thresholded at 0.5
/// (raw value > 0.5 maps to 1, else 0).
Eigen::MatrixXd generate_covariates(const DgpConfig& config, RngStream& rng);

struct SurvivalTimes {
    Eigen::VectorXd s;
    Eigen::VectorXi delta;
    Eigen::VectorXd event_time;  // latent t_i, kept for checks
    Eigen::VectorXd cens_time;   // latent c_i
};

/// Event times t_i = b * ((-ln u_i) / exp(beta' x_i))^(1/a), censoring
/// c_i ~ Weibull(cens_shape, cens_scale); s_i = min(t_i, c_i) and
/// delta_i = 1(t_i <= c_i).
SurvivalTimes generate_survival(const Eigen::MatrixXd& covs,
                                const DgpConfig& config, RngStream& rng);

/// Complete dataset: covariates plus survival outcome, ids 1..n.
SurvivalDataset generate_dataset(const DgpConfig& config, RngStream& rng);

/// Log odds ratio of joint missingness from the 2x2 cross-tabulation
/// with cells p11 = p_joint, p10 = p_j - p_joint, p01 = p_k - p_joint,
/// p00 = 1 - p10 - p01 - p11. Throws DegenerateCell when a cell is <= 0.
double compute_gamma1(double p_j, double p_k, double p_joint);

/// Intercept solving logit(p_j) = gamma0 + gamma1 * P(M_k=1) + gamma2 * xbar_l.
double compute_gamma0(double p_j, double gamma1, double p_k, double gamma2,
                      double xbar_l);

/// Blank target covariates of a complete dataset according to the
/// pattern, sequentially in entry order. s and delta are never blanked.
SurvivalDataset impose_missingness(const SurvivalDataset& data,
                                   const MissingPattern& pattern,
                                   RngStream& rng);

/// The nine study patterns A-I.
std::map<std::string, MissingPattern> pattern_catalog();

} // namespace survboot
