#include <cmath>

#include "doctest.h"
#include "twosat/analytics.hpp"
#include "twosat/experiments.hpp"
#include "twosat/rng.hpp"
#include "twosat/sampler.hpp"
#include "twosat/spine.hpp"

using namespace twosat;

TEST_CASE("sat probability exact points") {
    // m=0 is always SAT; the unique 4-clause formula on 2 variables is UNSAT;
    // every 3-clause formula on 2 variables is SAT
    CHECK(estimate_sat_probability(5, EnsemblePoint::fnm(0), 50, 1).estimate == 1.0);
    CHECK(estimate_sat_probability(2, EnsemblePoint::fnm(4), 50, 2).estimate == 0.0);
    CHECK(estimate_sat_probability(2, EnsemblePoint::fnm(3), 200, 3).estimate == 1.0);
}

TEST_CASE("sat probability is worker-count independent") {
    EnsemblePoint pt = EnsemblePoint::fnm(60);
    ProportionEstimate a = estimate_sat_probability(64, pt, 400, 7, 11, 1);
    ProportionEstimate b = estimate_sat_probability(64, pt, 400, 7, 11, 4);
    CHECK(a.successes == b.successes);
}

TEST_CASE("spine estimate at m=0 is zero") {
    SpineEstimate e = estimate_spine_mean(100, EnsemblePoint::fnm(0), 5, 50, 1);
    CHECK(e.mean == 0.0);
    CHECK(e.undetermined == 0);
}

TEST_CASE("spine estimate tracks the full spine on small instances") {
    // with every literal sampled many times the estimator converges to |S|
    const uint32_t n = 64;
    EnsemblePoint pt = EnsemblePoint::fnm(64);
    SpineEstimate e = estimate_spine_mean(n, pt, 300, 400, 5);
    CHECK(e.mean > 0.0);
    CHECK(e.se > 0.0);
    CHECK(e.se < e.mean);
    CHECK(e.undetermined == 0);
}

TEST_CASE("fit_power_law basics") {
    std::vector<std::pair<double, double>> quad{{1, 1}, {2, 4}, {3, 9}, {4, 16}};
    ExponentFit f = fit_power_law(quad);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.stderr_slope == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> flat{{1, 3}, {2, 3}, {5, 3}, {9, 3}};
    CHECK(fit_power_law(flat).slope == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS(fit_power_law({{1, 1}, {2, 2}}));
    CHECK_THROWS(fit_power_law({{1, 1}, {2, -2}, {3, 3}}));
}

TEST_CASE("fit recovers a noisy -1/3 slope") {
    SplitMix64 rng(81);
    std::vector<std::pair<double, double>> pts;
    for (double x = 1.0; x <= 10.01; x += 0.5) {
        double y = std::pow(x, -1.0 / 3.0) * (1.0 + 0.01 * (rng.next_double() - 0.5));
        pts.push_back({x, y});
    }
    ExponentFit f = fit_power_law(pts);
    CHECK(std::abs(f.slope + 1.0 / 3.0) < 0.02);
}

TEST_CASE("run_sweep determinism and ordering") {
    SweepConfig cfg;
    cfg.n_values = {32, 64};
    cfg.lambda_values = {-2.0, 0.0, 2.0};
    cfg.trials = 200;
    cfg.master_seed = 17;
    cfg.workers = 1;
    std::vector<SweepRow> rows1 = run_sweep(cfg);
    cfg.workers = 3;
    std::vector<SweepRow> rows2 = run_sweep(cfg);
    REQUIRE(rows1.size() == 6);
    CHECK(sweep_csv(rows1) == sweep_csv(rows2));
    // deterministic grid order: n-major
    CHECK(rows1[0].n == 32);
    CHECK(rows1[3].n == 64);
}

TEST_CASE("empty grid yields a header-only CSV") {
    SweepConfig cfg;
    cfg.n_values = {16};
    CHECK(sweep_csv(run_sweep(cfg)) == std::string(kSweepCsvHeader) + "\n");
    cfg.n_values.clear();
    cfg.m_values = {4, 8};
    CHECK(sweep_csv(run_sweep(cfg)) == std::string(kSweepCsvHeader) + "\n");
    // two axes at once is still a configuration error
    cfg.n_values = {16};
    cfg.p_values = {0.01};
    CHECK_THROWS(run_sweep(cfg));
}

TEST_CASE("coupled sweep gives exactly monotone sat counts") {
    SweepConfig cfg;
    cfg.n_values = {96};
    cfg.m_values = {48, 77, 96, 115, 144, 192};
    cfg.coupled = true;
    cfg.trials = 150;
    cfg.master_seed = 23;
    cfg.workers = 2;
    std::vector<SweepRow> rows = run_sweep(cfg);
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].sat_count <= rows[i - 1].sat_count);
}

TEST_CASE("window estimate orders its edges") {
    WindowEstimate w = estimate_window(512, 0.4, 300, 5, 5e-3, 2);
    CHECK(w.alpha_minus <= w.alpha_plus);
    CHECK(w.width >= 0.0);
    CHECK(w.conf_minus >= 0.0);
    // both edges sit within 1 + Theta(n^-1/3) of the critical density
    double scale = 3.0 / std::cbrt(512.0);
    CHECK(std::abs(w.alpha_minus - 1.0) < scale);
    CHECK(std::abs(w.alpha_plus - 1.0) < scale);
    CHECK_THROWS(estimate_window(64, 0.6, 10, 1));
}

TEST_CASE("ensemble point helpers") {
    EnsemblePoint pm = point_for_lambda(1000, 0.0, false);
    CHECK(pm.m == 1000);
    EnsemblePoint pp = point_for_lambda(1000, 0.0, true);
    CHECK(pp.p == doctest::Approx(1.0 / 2000.0));
    CHECK(lambda_of_point(1000, pm) == doctest::Approx(0.0));
    CHECK(lambda_of_point(1000, point_for_lambda(1000, -3.0, false)) ==
          doctest::Approx(-3.0).epsilon(0.02));
}

TEST_CASE("spine variance sanity at a supercritical point") {
    // order-of-magnitude only: the pairwise covariance bound O(n^-2/3/lambda)
    // caps Var(|S|) at O(n^4/3) scale times a lambda factor
    const uint32_t n = 4096;
    const double lambda = 3.0;
    EnsemblePoint pt = point_for_lambda(n, lambda, false);
    SplitMix64 rng(92);
    const int trials = 120;
    std::vector<double> sizes;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 trial_rng(derive_seed(92, 0, t));
        Formula f = sample_fnm(n, pt.m, trial_rng);
        sizes.push_back(double(spine(f).size()));
    }
    double mean = 0;
    for (double s : sizes) mean += s;
    mean /= sizes.size();
    double var = 0;
    for (double s : sizes) var += (s - mean) * (s - mean);
    var /= (sizes.size() - 1);
    double n43 = std::pow(double(n), 4.0 / 3.0);
    CHECK(var > 0.0);
    CHECK(var < 50.0 * n43 * lambda);
}

TEST_CASE("format_sig pins nine significant digits") {
    CHECK(format_sig(0.123456789123) == "0.123456789");
    CHECK(format_sig(1.0) == "1");
    CHECK(format_sig(0.5) == "0.5");
}
