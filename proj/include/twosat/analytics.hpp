#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "twosat/rng.hpp"

namespace twosat {

// Order parameter: the unique root of 1 - theta = exp(-(1+eps) theta) in
// (0,1) for eps > 0, and 0 for eps <= 0.  Bisection bracket (0,1) followed
// by a Newton polish; residual below 1e-12.
double theta(double eps);

// Survival probability of a Poisson birth-and-death process with birth rate
// 1 + eps, summed to k_max terms; agrees with theta() in the limit.
double theta_series(double eps, uint32_t k_max);

// Exact table of f(k, m), the number of connected labelled graphs on k
// vertices with m edges, built by the root-component recurrence with
// arbitrary-precision integers.
class ConnectedGraphTable {
  public:
    explicit ConnectedGraphTable(uint32_t max_k = 30);

    uint32_t max_k() const { return max_k_; }

    // f(k, m); zero when m < k-1 or m > k(k-1)/2.  k must be within the table.
    const mpz_class& count(uint32_t k, uint64_t m) const;

    // c_{k,l} defined by f(k, k-1+l) = c_{k,l} k^(k-2+3l/2)
    double wright_coefficient(uint32_t k, uint32_t l) const;

    // Pr(G_{k,p} is connected) = sum_m f(k,m) p^m (1-p)^(C(k,2)-m),
    // assembled in extended precision
    double connectivity_probability(uint32_t k, double p) const;

    // S_p(k) = sum_l c_{k,l} (k^(3/2) p/(1-p))^l, evaluated exactly as
    // (1/k^(k-2)) sum_l f(k,k-1+l) (p/(1-p))^l
    double s_pk_exact(uint32_t k, double p) const;

  private:
    void require(uint32_t k) const;
    uint32_t max_k_;
    std::vector<std::vector<mpz_class>> table_;  // table_[k][m]
    mpz_class zero_;
};

// Truncated series for S_p(k) usable beyond the exact table, with Wright's
// asymptotic coefficients; reports the first neglected term as an error
// indicator.
struct STruncated {
    double value = 0.0;
    double first_neglected = 0.0;
};
STruncated s_pk_truncated(uint32_t k, double p, uint32_t l_max);

// Pr(out-set of a literal is strictly distinct of size k) in the
// independent-clause ensemble:
// P_{n,p}(k) = 2^(k-1) C(n-1,k-1) (1-p)^(2kn-3k^2/2-k/2) Pr(G_{k,p} conn)
double p_nk(const ConnectedGraphTable& t, uint64_t n, double p, uint32_t k);

// Distribution of the component containing a fixed vertex in G_{n, ptilde}
double component_size_pmf(const ConnectedGraphTable& t, uint64_t n,
                          double ptilde, uint32_t k);

// Q_{n,p}(k): trimmed out-graph size distribution, equal to the component
// size law of G_{n, 2p-p^2}
double q_nk(const ConnectedGraphTable& t, uint64_t n, double p, uint32_t k);

// R_{n,p}(k): the component is a tree of size k, with the explicit tree term
// replacing the connectivity factor; Q = R * S_{2p-p^2} holds exactly
double r_nk(uint64_t n, double p, uint32_t k);

// Component-exploration walk: N_0 = n-1, N_t = Binomial(N_{t-1}, 1-ptilde),
// Y_t = n - t - N_t; returns the least t with Y_t = 0, which is distributed
// as the component size of a fixed vertex in G_{n, ptilde}.
uint64_t component_size_walk(uint32_t n, double ptilde, SplitMix64& rng);

// ensemble conversion m ~ 2n(n-1)p and the Chernoff-type tail bound
uint64_t m_for_p(uint64_t n, double p);
double p_for_m(uint64_t n, uint64_t m);
double binomial_tail_bound(double N, double p, double rho);

}  // namespace twosat
