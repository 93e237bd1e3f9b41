#include <doctest.h>

#include <cmath>
#include <sstream>

#include "survboot/datagen.hpp"
#include "survboot/errors.hpp"

using namespace survboot;

TEST_CASE("covariate column 1 hits its thresholded-normal mean") {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = 10000;
    RngStream rng(101, 0);
    const Eigen::MatrixXd x = generate_covariates(cfg, rng);
    // P(Z > 0.5) for mu=0.6145, sd=sqrt(0.2370)
    CHECK(x.col(0).mean() == doctest::Approx(0.593).epsilon(0.02 / 0.593));
    CHECK(std::abs(x.col(0).mean() - 0.593) < 0.02);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double v = x(i, 0);
        CHECK((v == 0.0 || v == 1.0));
    }
}

TEST_CASE("continuous column 2 keeps the configured mean") {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = 10000;
    RngStream rng(102, 0);
    const Eigen::MatrixXd x = generate_covariates(cfg, rng);
    CHECK(std::abs(x.col(1).mean() - 57.6495) < 0.5);
}

TEST_CASE("n=0 covariates are empty") {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = 0;
    RngStream rng(103, 0);
    const Eigen::MatrixXd x = generate_covariates(cfg, rng);
    CHECK(x.rows() == 0);
    CHECK(x.cols() == 11);
}

TEST_CASE("event times follow the closed-form inverse transform") {
    DgpConfig cfg = DgpConfig::defaults();
    const Eigen::MatrixXd covs = Eigen::MatrixXd::Zero(3, 11);
    RngStream probe(104, 0);
    RngStream rng(104, 0);
    const SurvivalTimes st = generate_survival(covs, cfg, rng);
    for (Eigen::Index i = 0; i < 3; ++i) {
        const double u = probe.uniform_open();
        const double c = probe.weibull(2.6, 8.2);
        // linear predictor is 0, so t = 122 * (-ln u)^(1/1.6)
        const double t = 122.0 * std::pow(-std::log(u), 1.0 / 1.6);
        CHECK(st.event_time(i) == doctest::Approx(t).epsilon(1e-14));
        CHECK(st.cens_time(i) == doctest::Approx(c).epsilon(1e-14));
        CHECK(st.s(i) == std::min(t, c));
        CHECK(st.delta(i) == (t <= c ? 1 : 0));
    }
    // unit inner term: u = e^-1 with beta'X = 0 gives exactly the scale
    CHECK(122.0 * std::pow(-std::log(std::exp(-1.0)), 1.0 / 1.6) ==
          doctest::Approx(122.0).epsilon(1e-12));
    // beta'X = ln 2 halves the inner term
    CHECK(122.0 * std::pow(-std::log(std::exp(-1.0)) / 2.0, 1.0 / 1.6) ==
          doctest::Approx(79.04).epsilon(1e-3));
}

TEST_CASE("generated dataset is complete with ids 1..n") {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = 200;
    RngStream rng(105, 0);
    const SurvivalDataset d = generate_dataset(cfg, rng);
    CHECK(d.n() == 200);
    CHECK(Eigen::Index(d.complete_rows().size()) == 200);
    CHECK(d.id(0) == 1);
    CHECK(d.id(199) == 200);
    CHECK(d.s.minCoeff() > 0.0);
}

TEST_CASE("default event proportion by year 5 is frozen") {
    DgpConfig cfg = DgpConfig::defaults();
    RngStream rng(106, 0);
    const SurvivalDataset d = generate_dataset(cfg, rng);
    Eigen::Index events = 0;
    for (Eigen::Index i = 0; i < d.n(); ++i)
        if (d.delta(i) == 1 && d.s(i) <= 5.0) ++events;
    const double frac = double(events) / double(d.n());
    CHECK(frac > 0.02);
    CHECK(frac < 0.5);
    // regression pin for the deterministic stream above
    CHECK(frac == doctest::Approx(0.0985714286).epsilon(1e-6));
}

TEST_CASE("gamma1 reproduces the reference log odds ratios") {
    CHECK(compute_gamma1(0.15, 0.05, 0.02) ==
          doctest::Approx(std::log(4.21)).epsilon(0.005 / std::log(4.21)));
    CHECK(std::abs(compute_gamma1(0.15, 0.05, 0.02) - std::log(4.21)) < 0.005);
    CHECK(std::abs(compute_gamma1(0.30, 0.15, 0.075) - std::log(2.78)) < 0.005);
    // independent pair has odds ratio 1
    CHECK(compute_gamma1(0.2, 0.3, 0.06) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(compute_gamma1(0.05, 0.05, 0.05), DegenerateCell);
}

TEST_CASE("gamma0 closed forms") {
    CHECK(compute_gamma0(0.05, 0.0, 0.0, 0.0, 0.0) ==
          doctest::Approx(std::log(1.0 / 19.0)).epsilon(1e-12));
    CHECK(compute_gamma0(0.05, 0.0, 0.0, std::log(1.05), 57.65) ==
          doctest::Approx(-2.9444 - 57.65 * std::log(1.05)).epsilon(1e-4));
    CHECK(compute_gamma0(0.5, 0.0, 0.0, 0.0, 0.0) == 0.0);
}

namespace {

SurvivalDataset big_complete(Eigen::Index n, std::uint64_t seed) {
    DgpConfig cfg = DgpConfig::defaults();
    cfg.n = n;
    RngStream rng(seed, 0);
    return generate_dataset(cfg, rng);
}

} // namespace

TEST_CASE("single-target MCAR pattern calibrates to its marginal") {
    const SurvivalDataset d = big_complete(100000, 107);
    MissingPattern pat{"t", {{0, 0.05, std::nullopt, 0.0, 1, 0.0}}};
    RngStream rng(108, 0);
    const SurvivalDataset m = impose_missingness(d, pat, rng);
    CHECK(std::abs(m.missing_fraction(0) - 0.05) < 0.005);
    // s, delta, and non-target columns untouched
    CHECK((m.s - d.s).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.delta - d.delta).cwiseAbs().maxCoeff() == 0);
    for (Eigen::Index j = 1; j < 11; ++j)
        CHECK((m.x.col(j) - d.x.col(j)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("worked three-covariate pattern hits the joint proportion") {
    const SurvivalDataset d = big_complete(100000, 109);
    const MissingPattern pat = pattern_catalog().at("E");
    RngStream rng(110, 0);
    const SurvivalDataset m = impose_missingness(d, pat, rng);
    Eigen::Index joint13 = 0, joint34 = 0;
    for (Eigen::Index i = 0; i < m.n(); ++i) {
        const bool m1 = std::isnan(m.x(i, 0));
        const bool m3 = std::isnan(m.x(i, 2));
        const bool m4 = std::isnan(m.x(i, 3));
        if (m1 && m3) ++joint13;
        if (m3 && m4) ++joint34;
    }
    CHECK(std::abs(double(joint13) / double(m.n()) - 0.02) < 0.005);
    CHECK(std::abs(double(joint34) / double(m.n()) - 0.075) < 0.01);
}

TEST_CASE("MCAR missingness is independent of the covariate (chi-square)") {
    const SurvivalDataset d = big_complete(100000, 111);
    MissingPattern pat{"t", {{2, 0.15, std::nullopt, 0.0, 1, 0.0}}};
    RngStream rng(112, 0);
    const SurvivalDataset m = impose_missingness(d, pat, rng);
    // cross-tabulate M(x3) against the binary covariate x1
    double tab[2][2] = {{0, 0}, {0, 0}};
    for (Eigen::Index i = 0; i < m.n(); ++i)
        tab[std::isnan(m.x(i, 2)) ? 1 : 0][d.x(i, 0) > 0.5 ? 1 : 0] += 1.0;
    const double n = double(m.n());
    double chi2 = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double expect =
                (tab[a][0] + tab[a][1]) * (tab[0][b] + tab[1][b]) / n;
            chi2 += (tab[a][b] - expect) * (tab[a][b] - expect) / expect;
        }
    // 1 df critical value at alpha = 0.001
    CHECK(chi2 < 10.828);
}

TEST_CASE("pattern catalog covers A through I with the stated marginals") {
    const auto cat = pattern_catalog();
    CHECK(cat.size() == 9);
    const MissingPattern& e = cat.at("E");
    REQUIRE(e.entries.size() == 3);
    CHECK(e.entries[0].target == 0);
    CHECK(e.entries[1].target == 2);
    CHECK(e.entries[2].target == 3);
    CHECK(e.entries[0].marginal == 0.05);
    CHECK(e.entries[1].marginal == 0.15);
    CHECK(e.entries[2].marginal == 0.30);
    CHECK(e.entries[1].joint == 0.02);
    CHECK(e.entries[2].joint == 0.075);
    const MissingPattern& i = cat.at("I");
    REQUIRE(i.entries.size() == 6);
    const double want[] = {0.15, 0.15, 0.30, 0.30, 0.60, 0.60};
    for (int k = 0; k < 6; ++k) CHECK(i.entries[k].marginal == want[k]);
    const Eigen::Index want_t[] = {0, 2, 3, 6, 9, 10};
    for (int k = 0; k < 6; ++k) CHECK(i.entries[k].target == want_t[k]);
    // complete columns of a triple pattern
    const auto comp = e.complete_columns(11);
    const std::vector<Eigen::Index> want_c{1, 4, 5, 6, 7, 8, 9, 10};
    CHECK(comp == want_c);
}

TEST_CASE("dataset CSV round-trips missing cells") {
    const SurvivalDataset d = big_complete(50, 113);
    MissingPattern pat{"t", {{0, 0.3, std::nullopt, 0.0, 1, 0.0}}};
    RngStream rng(114, 0);
    const SurvivalDataset m = impose_missingness(d, pat, rng);
    std::ostringstream os;
    write_csv(m, os);
    std::istringstream is(os.str());
    const SurvivalDataset back = read_csv(is);
    REQUIRE(back.n() == m.n());
    CHECK((back.id - m.id).cwiseAbs().maxCoeff() == 0);
    for (Eigen::Index i = 0; i < m.n(); ++i) {
        CHECK(back.s(i) == doctest::Approx(m.s(i)).epsilon(1e-9));
        CHECK(back.delta(i) == m.delta(i));
        for (Eigen::Index j = 0; j < 11; ++j) {
            if (std::isnan(m.x(i, j)))
                CHECK(std::isnan(back.x(i, j)));
            else
                CHECK(back.x(i, j) == doctest::Approx(m.x(i, j)).epsilon(1e-9));
        }
    }
}
