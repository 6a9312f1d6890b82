#include "twosat/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace twosat {

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z) {
    WilsonInterval w;
    if (trials == 0) return w;
    double n = double(trials);
    double phat = double(successes) / n;
    w.estimate = phat;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = phat + z2 / (2.0 * n);
    double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    w.low = (center - spread) / denom;
    w.high = (center + spread) / denom;
    if (w.low < 0.0) w.low = 0.0;
    if (w.high > 1.0) w.high = 1.0;
    return w;
}

double binomial_se(uint64_t successes, uint64_t trials) {
    if (trials == 0) return 0.0;
    double p = double(successes) / double(trials);
    return std::sqrt(p * (1.0 - p) / double(trials));
}

double chi_square_p_value(double statistic, uint64_t dof) {
    if (dof == 0) return 1.0;
    boost::math::chi_squared dist{double(dof)};
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_compare(const std::vector<uint64_t>& counts,
                                   const std::vector<double>& pmf,
                                   uint64_t tail_count, double min_expected) {
    if (counts.size() != pmf.size())
        throw std::invalid_argument("chi_square_compare: size mismatch");
    uint64_t total = tail_count;
    for (uint64_t c : counts) total += c;
    if (total == 0) throw std::invalid_argument("chi_square_compare: no samples");

    double pmf_sum = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    if (pmf_sum > 1.0 + 1e-9)
        throw std::invalid_argument("chi_square_compare: pmf sums above 1");

    // bins with adequate expectation, remainder merged into one tail bin
    double tail_p = std::max(0.0, 1.0 - pmf_sum);
    double tail_obs = double(tail_count);
    double stat = 0.0;
    uint64_t bins = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        double expct = pmf[i] * double(total);
        if (expct < min_expected) {
            tail_p += pmf[i];
            tail_obs += double(counts[i]);
            continue;
        }
        double diff = double(counts[i]) - expct;
        stat += diff * diff / expct;
        ++bins;
    }
    double tail_expct = tail_p * double(total);
    if (tail_expct >= min_expected || tail_obs > 0.0) {
        if (tail_expct <= 0.0) {
            if (tail_obs > 0.0)
                throw std::invalid_argument(
                    "chi_square_compare: observations in zero-probability tail");
        } else {
            double diff = tail_obs - tail_expct;
            stat += diff * diff / tail_expct;
            ++bins;
        }
    }
    if (bins < 2)
        throw std::invalid_argument("chi_square_compare: degenerate binning");

    ChiSquareResult r;
    r.statistic = stat;
    r.dof = bins - 1;
    r.bins_used = bins;
    r.p_value = chi_square_p_value(stat, r.dof);
    return r;
}

}  // namespace twosat
