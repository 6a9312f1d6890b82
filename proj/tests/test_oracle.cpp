#include <algorithm>

#include "doctest.h"
#include "test_util.hpp"
#include "twosat/analytics.hpp"
#include "twosat/oracle.hpp"
#include "twosat/stats.hpp"

using namespace twosat;
using namespace twosat_test;

TEST_CASE("brute_sat basics") {
    CHECK(oracle::brute_sat(make_formula(3, {})));
    CHECK_FALSE(oracle::brute_sat(
        make_formula(2, {cl(1, 2), cl(1, -2), cl(-1, 2), cl(-1, -2)})));
    CHECK_THROWS(oracle::brute_sat(make_formula(21, {})));
}

TEST_CASE("brute_spine basics") {
    CHECK(oracle::brute_spine(make_formula(2, {cl(1, 2)})).empty());
    std::vector<Literal> s = oracle::brute_spine(make_formula(2, {cl(-1, 2), cl(-2, -1)}));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == lit(1));
    SplitMix64 rng(40);
    CHECK_THROWS(oracle::brute_spine(sample_fnm(5, 17, rng)));
}

TEST_CASE("brute_backbone basics and containment in the spine") {
    CHECK(oracle::brute_backbone(make_formula(3, {})).empty());
    std::vector<Literal> bb =
        oracle::brute_backbone(make_formula(2, {cl(-1, 2), cl(-2, -1)}));
    REQUIRE(bb.size() == 1);
    CHECK(bb[0] == lit(1));

    SplitMix64 rng(41);
    for (int it = 0; it < 600; ++it) {
        Formula f = random_small(rng, 7, 12);
        std::vector<Literal> backbone = oracle::brute_backbone(f);
        std::vector<Literal> spine = oracle::brute_spine(f);
        CHECK(std::includes(spine.begin(), spine.end(), backbone.begin(),
                            backbone.end()));
        if (oracle::brute_sat(f)) CHECK(backbone == spine);
    }
}

TEST_CASE("reach_all Monte Carlo basics") {
    CHECK(oracle::reach_all_probability_mc(1, 0.3, 1000, 1) == 1.0);
    double two = oracle::reach_all_probability_mc(2, 0.5, 100000, 2);
    CHECK(std::abs(two - 0.5) < 3.0 * std::sqrt(0.25 / 100000));
}

TEST_CASE("reach_all matches connectivity probability (k=4, p=0.3)") {
    ConnectedGraphTable table(6);
    double exact = table.connectivity_probability(4, 0.3);
    double mc = oracle::reach_all_probability_mc(4, 0.3, 100000, 3);
    double se = std::sqrt(exact * (1 - exact) / 100000);
    CHECK(std::abs(mc - exact) < 3.5 * se);
}

TEST_CASE("chi-square self-calibration") {
    // sampling from the exact pmf should rarely reject
    SplitMix64 rng(43);
    std::vector<double> pmf{0.5, 0.3, 0.15, 0.05};
    int rejects = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<uint64_t> counts(4, 0);
        for (int s = 0; s < 2000; ++s) {
            double u = rng.next_double();
            size_t k = u < 0.5 ? 0 : u < 0.8 ? 1 : u < 0.95 ? 2 : 3;
            counts[k]++;
        }
        if (chi_square_compare(counts, pmf).p_value < 0.01) ++rejects;
    }
    CHECK(rejects <= 5);

    // a shifted pmf must be rejected decisively at 10^5 samples
    std::vector<uint64_t> counts(4, 0);
    for (int s = 0; s < 100000; ++s) {
        double u = rng.next_double();
        size_t k = u < 0.45 ? 0 : u < 0.80 ? 1 : u < 0.95 ? 2 : 3;
        counts[k]++;
    }
    CHECK(chi_square_compare(counts, pmf).p_value < 1e-6);

    // degenerate binning is rejected
    CHECK_THROWS(chi_square_compare({100}, {1.0}));
}
