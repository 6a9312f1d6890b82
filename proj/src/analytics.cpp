#include "twosat/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "twosat/sampler.hpp"

namespace twosat {

namespace {

constexpr mp_bitcnt_t kPrecisionBits = 256;

uint64_t pairs(uint64_t k) { return k * (k - 1) / 2; }

// mpf binomial C(n-1, k-1) etc. via mpz
mpz_class binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

double log_mpz(const mpz_class& z) {
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + double(exp2) * std::log(2.0);
}

}  // namespace

double theta(double eps) {
    if (eps <= 0.0) return 0.0;
    auto g = [eps](double th) { return 1.0 - th - std::exp(-(1.0 + eps) * th); };
    double lo = 0.0, hi = 1.0;
    // g > 0 just right of 0 and g(1) < 0; bisect to the nontrivial root
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = g(mid);
        // guard against the trivial root: near 0, g ~ eps*th > 0
        if (v > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double th = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        double e = std::exp(-(1.0 + eps) * th);
        double deriv = -1.0 + (1.0 + eps) * e;
        double v = 1.0 - th - e;
        if (deriv == 0.0) break;
        th -= v / deriv;
    }
    if (th < 0.0) th = 0.0;
    if (th > 1.0) th = 1.0;
    return th;
}

double theta_series(double eps, uint32_t k_max) {
    double rate = 1.0 + eps;
    double sum = 0.0;
    for (uint32_t k = 1; k <= k_max; ++k) {
        double lt = (k - 1) * std::log(double(k)) - std::lgamma(double(k) + 1.0) +
                    (k - 1) * std::log(rate) - rate * double(k);
        sum += std::exp(lt);
    }
    return 1.0 - sum;
}

ConnectedGraphTable::ConnectedGraphTable(uint32_t max_k) : max_k_(max_k), zero_(0) {
    table_.resize(max_k + 1);
    // C_k(x) = (1+x)^C(k,2) - sum_{j<k} C(k-1,j-1) C_j(x) (1+x)^C(k-j,2)
    for (uint32_t k = 1; k <= max_k; ++k) {
        uint64_t deg = pairs(k);
        std::vector<mpz_class> coeff(deg + 1);
        for (uint64_t m = 0; m <= deg; ++m) coeff[m] = binom(deg, m);
        for (uint32_t j = 1; j < k; ++j) {
            mpz_class choose = binom(k - 1, j - 1);
            const auto& cj = table_[j];
            uint64_t rest_deg = pairs(k - j);
            std::vector<mpz_class> rest(rest_deg + 1);
            for (uint64_t m = 0; m <= rest_deg; ++m) rest[m] = binom(rest_deg, m);
            for (uint64_t a = 0; a < cj.size(); ++a) {
                if (cj[a] == 0) continue;
                mpz_class factor = choose * cj[a];
                for (uint64_t b = 0; b <= rest_deg; ++b)
                    coeff[a + b] -= factor * rest[b];
            }
        }
        table_[k] = std::move(coeff);
    }
}

void ConnectedGraphTable::require(uint32_t k) const {
    if (k == 0 || k > max_k_)
        throw std::out_of_range("ConnectedGraphTable: k outside exact table");
}

const mpz_class& ConnectedGraphTable::count(uint32_t k, uint64_t m) const {
    require(k);
    const auto& row = table_[k];
    if (m >= row.size()) return zero_;
    return row[m];
}

double ConnectedGraphTable::wright_coefficient(uint32_t k, uint32_t l) const {
    require(k);
    const mpz_class& f = count(k, k - 1 + uint64_t(l));
    if (f == 0) return 0.0;
    double logc = log_mpz(f) - (double(k) - 2.0 + 1.5 * double(l)) * std::log(double(k));
    return std::exp(logc);
}

double ConnectedGraphTable::connectivity_probability(uint32_t k, double p) const {
    require(k);
    if (k == 1) return 1.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    mpf_class acc(0, kPrecisionBits);
    mpf_class pw(1, kPrecisionBits);
    mpf_class fp(p, kPrecisionBits);
    mpf_class fq(1.0 - p, kPrecisionBits);
    uint64_t deg = pairs(k);
    // p^m (1-p)^(deg-m), accumulated as (1-p)^deg * (p/(1-p))^m
    mpf_class ratio = fp / fq;
    mpf_class qpow(0, kPrecisionBits);
    mpf_pow_ui(qpow.get_mpf_t(), fq.get_mpf_t(), (unsigned long)deg);
    for (uint64_t m = k - 1; m <= deg; ++m) {
        mpf_pow_ui(pw.get_mpf_t(), ratio.get_mpf_t(), (unsigned long)m);
        acc += mpf_class(table_[k][m], kPrecisionBits) * pw;
    }
    acc *= qpow;
    return acc.get_d();
}

double ConnectedGraphTable::s_pk_exact(uint32_t k, double p) const {
    require(k);
    if (k == 1) return 1.0;
    if (p <= 0.0) return 1.0;
    mpf_class acc(0, kPrecisionBits);
    mpf_class ratio(0, kPrecisionBits);
    ratio = mpf_class(p, kPrecisionBits) / mpf_class(1.0 - p, kPrecisionBits);
    uint64_t lmax = pairs(k) - (k - 1);
    mpf_class pw(1, kPrecisionBits);
    for (uint64_t l = 0; l <= lmax; ++l) {
        acc += mpf_class(table_[k][k - 1 + l], kPrecisionBits) * pw;
        pw *= ratio;
    }
    mpz_class kpow;
    mpz_ui_pow_ui(kpow.get_mpz_t(), k, k - 2);
    acc /= mpf_class(kpow, kPrecisionBits);
    return acc.get_d();
}

STruncated s_pk_truncated(uint32_t k, double p, uint32_t l_max) {
    STruncated out;
    double x = std::pow(double(k), 1.5) * p / (1.0 - p);
    double sum = 1.0;  // l = 0 term, c_{k,0} = 1
    double term = 0.0;
    const double gamma = 1.0 / (2.0 * M_PI);  // Wright's constant
    auto coeff = [&](uint32_t l) -> double {
        if (l == 0) return 1.0;
        if (l == 1) return std::sqrt(M_PI / 8.0);
        return gamma * std::sqrt(3.0 * M_PI) *
               std::pow(std::exp(1.0) / (12.0 * (double(l) - 1.0)),
                        (double(l) - 1.0) / 2.0);
    };
    for (uint32_t l = 1; l <= l_max; ++l) {
        term = coeff(l) * std::pow(x, double(l));
        sum += term;
    }
    out.value = sum;
    out.first_neglected = coeff(l_max + 1) * std::pow(x, double(l_max) + 1.0);
    return out;
}

double p_nk(const ConnectedGraphTable& t, uint64_t n, double p, uint32_t k) {
    if (k < 1 || k > n) throw std::out_of_range("p_nk: k outside 1..n");
    if (p <= 0.0 || p >= 1.0) throw std::out_of_range("p_nk: p outside (0,1)");
    // exponent 2kn - 3k^2/2 - k/2 = 2kn - k(3k+1)/2 (always integral)
    uint64_t e = 2 * uint64_t(k) * n - uint64_t(k) * (3 * uint64_t(k) + 1) / 2;
    mpf_class acc(t.connectivity_probability(k, p), kPrecisionBits);
    mpf_class q(1.0 - p, kPrecisionBits);
    mpf_class qpow(0, kPrecisionBits);
    mpf_pow_ui(qpow.get_mpf_t(), q.get_mpf_t(), (unsigned long)e);
    acc *= qpow;
    mpz_class pre = binom(n - 1, k - 1);
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, k - 1);
    pre *= two;
    acc *= mpf_class(pre, kPrecisionBits);
    return acc.get_d();
}

double component_size_pmf(const ConnectedGraphTable& t, uint64_t n,
                          double ptilde, uint32_t k) {
    if (k < 1 || k > n) throw std::out_of_range("component_size_pmf: k outside 1..n");
    if (ptilde <= 0.0) return k == 1 ? 1.0 : 0.0;
    if (ptilde >= 1.0) return k == n ? 1.0 : 0.0;
    mpf_class acc(t.connectivity_probability(k, ptilde), kPrecisionBits);
    mpf_class q(1.0 - ptilde, kPrecisionBits);
    mpf_class qpow(0, kPrecisionBits);
    uint64_t e = uint64_t(k) * (n - k);
    mpf_pow_ui(qpow.get_mpf_t(), q.get_mpf_t(), (unsigned long)e);
    acc *= qpow;
    acc *= mpf_class(binom(n - 1, k - 1), kPrecisionBits);
    return acc.get_d();
}

double q_nk(const ConnectedGraphTable& t, uint64_t n, double p, uint32_t k) {
    if (p <= 0.0 || p >= 1.0) throw std::out_of_range("q_nk: p outside (0,1)");
    return component_size_pmf(t, n, p * (2.0 - p), k);
}

double r_nk(uint64_t n, double p, uint32_t k) {
    if (k < 1 || k > n) throw std::out_of_range("r_nk: k outside 1..n");
    if (p <= 0.0 || p >= 1.0) throw std::out_of_range("r_nk: p outside (0,1)");
    double pt = p * (2.0 - p);
    // tree term k^(k-2) pt^(k-1) (1-pt)^(C(k,2)-k+1), then the component
    // boundary factor (1-pt)^(k(n-k)) and the C(n-1,k-1) placements
    mpf_class acc(1, kPrecisionBits);
    mpz_class kpow;
    mpz_ui_pow_ui(kpow.get_mpz_t(), k, k >= 2 ? k - 2 : 0);
    acc *= mpf_class(kpow, kPrecisionBits);
    acc *= mpf_class(binom(n - 1, k - 1), kPrecisionBits);
    mpf_class fpt(pt, kPrecisionBits);
    mpf_class ppow(0, kPrecisionBits);
    mpf_pow_ui(ppow.get_mpf_t(), fpt.get_mpf_t(), k - 1);
    acc *= ppow;
    mpf_class fq(1.0 - pt, kPrecisionBits);
    uint64_t e = uint64_t(k) * (n - k) + pairs(k) - (k - 1);
    mpf_class qpow(0, kPrecisionBits);
    mpf_pow_ui(qpow.get_mpf_t(), fq.get_mpf_t(), (unsigned long)e);
    acc *= qpow;
    return acc.get_d();
}

uint64_t component_size_walk(uint32_t n, double ptilde, SplitMix64& rng) {
    if (n == 0) return 0;
    uint64_t remaining = n - 1;  // N_t
    uint64_t t = 0;
    while (true) {
        ++t;
        uint64_t survivors = 0;
        for (uint64_t i = 0; i < remaining; ++i)
            if (!rng.next_bernoulli(ptilde)) ++survivors;
        remaining = survivors;
        // Y_t = n - t - N_t
        if (uint64_t(n) == t + remaining) return t;
    }
}

uint64_t m_for_p(uint64_t n, double p) {
    return (uint64_t)std::llround(double(clause_universe_size(n)) * p);
}

double p_for_m(uint64_t n, uint64_t m) {
    uint64_t universe = clause_universe_size(n);
    return universe == 0 ? 0.0 : double(m) / double(universe);
}

double binomial_tail_bound(double N, double p, double rho) {
    return std::exp(-rho * rho * p * N / 3.0);
}

}  // namespace twosat
