#include "survboot/validation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "survboot/errors.hpp"
#include "survboot/metrics.hpp"

namespace survboot {

std::string to_string(Approach a) { return a == Approach::CC ? "CC" : "BI"; }

std::string to_string(const ImputationStrategy& s) {
    switch (s.variant) {
        case ImputationStrategy::Variant::All:
            return "all";
        case ImputationStrategy::Variant::OnlyHighMissing:
            return "high-missing";
        case ImputationStrategy::Variant::OnlyFewMissing:
            return "few-missing";
    }
    return "all";
}

std::pair<SurvivalDataset, std::vector<int>> bootstrap_sample(
    const SurvivalDataset& data, RngStream& rng) {
    const Eigen::Index n = data.n();
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
    std::set<int> drawn;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index r = Eigen::Index(rng.below(std::uint64_t(n)));
        rows[std::size_t(i)] = r;
        drawn.insert(data.id(r));
    }
    std::vector<int> oob;
    for (Eigen::Index i = 0; i < n; ++i)
        if (!drawn.count(data.id(i))) oob.push_back(data.id(i));
    std::sort(oob.begin(), oob.end());
    return {data.select_rows(rows), std::move(oob)};
}

double boot_corrected(double app, const std::vector<double>& b_perf,
                      const std::vector<double>& o_perf) {
    if (b_perf.empty() || b_perf.size() != o_perf.size())
        throw DimensionMismatch("boot_corrected: mismatched vectors");
    double optimism = 0.0;
    for (std::size_t i = 0; i < b_perf.size(); ++i)
        optimism += b_perf[i] - o_perf[i];
    return app - optimism / double(b_perf.size());
}

namespace {
double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}
} // namespace

double e632(double app, const std::vector<double>& test_perf) {
    if (test_perf.empty())
        throw DimensionMismatch("e632: empty test performance");
    return 0.368 * app + 0.632 * mean_of(test_perf);
}

double e632plus(double app, const std::vector<double>& test_perf,
                double gamma) {
    if (test_perf.empty())
        throw DimensionMismatch("e632plus: empty test performance");
    if (gamma == app)
        throw DegenerateNoInformation("e632plus: gamma equals apparent");
    const double test_mean = mean_of(test_perf);
    const double r = (test_mean - app) / (gamma - app);
    const double w = 0.632 / (1.0 - 0.368 * r);
    return (1.0 - w) * app + w * test_mean;
}

std::vector<Eigen::Index> infer_targets(const SurvivalDataset& data) {
    std::vector<Eigen::Index> t;
    for (Eigen::Index j = 0; j < data.n_cov(); ++j)
        if (data.missing_fraction(j) > 0.0) t.push_back(j);
    return t;
}

std::vector<Eigen::Index> infer_complete_columns(const SurvivalDataset& data) {
    std::vector<Eigen::Index> c;
    for (Eigen::Index j = 0; j < data.n_cov(); ++j)
        if (data.missing_fraction(j) == 0.0) c.push_back(j);
    return c;
}

namespace {

/// A dataset made analysis-ready by the active approach: imputed (BI) or
/// left as-is (CC), with the rows a Cox model can use.
struct Prepared {
    SurvivalDataset dat;
    std::vector<Eigen::Index> usable;
};

Prepared prepare(const SurvivalDataset& data, const ValidationConfig& config) {
    if (config.approach == Approach::BI && !config.targets.empty()) {
        const auto models =
            fit_imputation_models(data, config.targets, config.predictors);
        auto [imp, report] = impute(data, models, config.strategy);
        Prepared p;
        p.usable = imp.complete_rows();
        p.dat = std::move(imp);
        return p;
    }
    Prepared p;
    p.dat = data;
    p.usable = data.complete_rows();
    return p;
}

struct ScoredFit {
    CoxFit fit;
    double auc = 0.0;
    double brier = 0.0;
};

ScoredFit fit_and_score(const SurvivalDataset& d, double horizon) {
    ScoredFit out;
    out.fit = fit_cox(d.x, d.s, d.delta);
    const Eigen::VectorXd risk = predict_risk(out.fit, d.x, horizon);
    const ScorePair sp = score_at_horizon(risk, d.s, d.delta, horizon);
    out.auc = sp.auc;
    out.brier = sp.brier;
    return out;
}

ScorePair score_on(const CoxFit& fit, const SurvivalDataset& d,
                   double horizon) {
    const Eigen::VectorXd risk = predict_risk(fit, d.x, horizon);
    return score_at_horizon(risk, d.s, d.delta, horizon);
}

} // namespace

ValidationResult validate(const SurvivalDataset& raw,
                          const ValidationConfig& config) {
    if (raw.n() == 0) throw Error("validate: empty dataset");

    ValidationResult result;
    SurvivalDataset dat_c;
    try {
        Prepared p = prepare(raw, config);
        dat_c = p.dat.select_rows(p.usable);
        const ScoredFit app = fit_and_score(dat_c, config.horizon);
        result.apparent_fit = app.fit;
        result.dat = std::move(p.dat);
        result.usable_rows = std::move(p.usable);
        result.report.auc.apparent = app.auc;
        result.report.brier.apparent = app.brier;
    } catch (const Error& e) {
        throw AnalysisModelFailure(std::string("apparent model: ") + e.what());
    }

    std::vector<double> b_auc, o_auc, test_auc;
    std::vector<double> b_brier, o_brier, test_brier;
    for (int it = 0; it < config.n_boot; ++it) {
        RngStream rng = RngStream(config.seed, std::uint64_t(it) + 1);
        try {
            auto [sample, oob_ids] = bootstrap_sample(raw, rng);
            Prepared pb = prepare(sample, config);
            const SurvivalDataset bs_c = pb.dat.select_rows(pb.usable);
            const ScoredFit bfit = fit_and_score(bs_c, config.horizon);

            const ScorePair o = score_on(bfit.fit, dat_c, config.horizon);

            std::vector<Eigen::Index> test_rows;
            for (Eigen::Index i = 0; i < dat_c.n(); ++i)
                if (std::binary_search(oob_ids.begin(), oob_ids.end(),
                                       dat_c.id(i)))
                    test_rows.push_back(i);
            const ScorePair test =
                score_on(bfit.fit, dat_c.select_rows(test_rows), config.horizon);

            b_auc.push_back(bfit.auc);
            b_brier.push_back(bfit.brier);
            o_auc.push_back(o.auc);
            o_brier.push_back(o.brier);
            test_auc.push_back(test.auc);
            test_brier.push_back(test.brier);
        } catch (const Error&) {
            ++result.report.boot_failures;
        }
    }
    result.report.n_boot_used = int(b_auc.size());
    if (result.report.n_boot_used == 0)
        throw AllBootstrapsFailed("validate: every bootstrap iteration failed");

    auto& rep = result.report;
    rep.auc.boot_corrected = boot_corrected(rep.auc.apparent, b_auc, o_auc);
    rep.auc.e632 = e632(rep.auc.apparent, test_auc);
    rep.auc.e632plus = e632plus(rep.auc.apparent, test_auc, rep.gamma_auc);
    rep.brier.boot_corrected =
        boot_corrected(rep.brier.apparent, b_brier, o_brier);
    rep.brier.e632 = e632(rep.brier.apparent, test_brier);
    rep.brier.e632plus =
        e632plus(rep.brier.apparent, test_brier, rep.gamma_brier);
    return result;
}

std::string report_csv_header() {
    return "approach,strategy,n_boot_used,boot_failures,"
           "auc_apparent,auc_boot,auc_632,auc_632plus,"
           "brier_apparent,brier_boot,brier_632,brier_632plus";
}

std::string report_csv_row(Approach approach,
                           const ImputationStrategy& strategy,
                           const ValidationReport& r) {
    std::ostringstream os;
    os << to_string(approach) << ',' << to_string(strategy) << ','
       << r.n_boot_used << ',' << r.boot_failures;
    for (const EstimatorSet* e : {&r.auc, &r.brier})
        os << ',' << format_double(e->apparent) << ','
           << format_double(e->boot_corrected) << ','
           << format_double(e->e632) << ',' << format_double(e->e632plus);
    return os.str();
}

} // namespace survboot
