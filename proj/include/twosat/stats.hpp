#pragma once

#include <cstdint>
#include <vector>

namespace twosat {

struct WilsonInterval {
    double estimate = 0.0;
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion (z = 1.96 for 95%);
// preferred over Wald for the small-probability tails above the window.
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials,
                               double z = 1.96);

// standard error of a binomial proportion estimate
double binomial_se(uint64_t successes, uint64_t trials);

struct ChiSquareResult {
    double statistic = 0.0;
    uint64_t dof = 0;
    double p_value = 1.0;
    uint64_t bins_used = 0;
};

// Pearson chi-square of an empirical histogram against an exact pmf.
// counts[i] pairs with pmf[i]; any probability mass missing from `pmf`
// (sum < 1) forms an explicit tail bin together with `tail_count`.
// Bins with expected count below `min_expected` are merged into the tail.
// Throws std::invalid_argument on degenerate binning (fewer than 2 bins).
ChiSquareResult chi_square_compare(const std::vector<uint64_t>& counts,
                                   const std::vector<double>& pmf,
                                   uint64_t tail_count = 0,
                                   double min_expected = 5.0);

// upper-tail p-value of the chi-squared distribution
double chi_square_p_value(double statistic, uint64_t dof);

}  // namespace twosat
