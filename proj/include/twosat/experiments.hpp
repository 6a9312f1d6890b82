#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "twosat/formula.hpp"
#include "twosat/stats.hpp"

namespace twosat {

// One parameter point of an ensemble: clause count (fnm) or clause
// probability (fnp).
struct EnsemblePoint {
    bool use_fnp = false;
    uint64_t m = 0;
    double p = 0.0;

    static EnsemblePoint fnm(uint64_t m) { return {false, m, 0.0}; }
    static EnsemblePoint fnp(double p) { return {true, 0, p}; }
};

EnsemblePoint point_for_lambda(uint32_t n, double lambda, bool use_fnp);
double lambda_of_point(uint32_t n, const EnsemblePoint& pt);

struct ProportionEstimate {
    uint64_t successes = 0;
    uint64_t trials = 0;
    double estimate = 0.0;
    double se = 0.0;
    WilsonInterval wilson;
};

// Fraction of independent instances satisfiable; trial i is seeded by
// derive_seed(master, point_id, i) so the result is a pure function of the
// configuration, independent of worker count.
ProportionEstimate estimate_sat_probability(uint32_t n, const EnsemblePoint& point,
                                            uint64_t trials, uint64_t seed,
                                            uint64_t point_id = 0,
                                            uint32_t workers = 1);

struct SpineEstimate {
    double mean = 0.0;  // estimate of E|S| (scaled by 2n)
    double se = 0.0;    // plug-in from per-trial means
    uint64_t members = 0;
    uint64_t samples = 0;
    uint64_t undetermined = 0;  // cap-exhausted queries, reported not guessed
    uint64_t trials = 0;
};

// Unbiased sampling estimator: per trial, literals are sampled uniformly and
// tested for spine membership; E|S| = 2n * membership probability.
// cap = 0 selects the default BFS cap of 50 n^(2/3) visited literals.
SpineEstimate estimate_spine_mean(uint32_t n, const EnsemblePoint& point,
                                  uint64_t trials, uint64_t literal_samples,
                                  uint64_t seed, uint64_t cap = 0,
                                  uint32_t workers = 1);

struct WindowEstimate {
    uint32_t n = 0;
    double delta = 0.0;
    double alpha_minus = 0.0;  // largest tested alpha with Pr(SAT) >= 1-delta
    double alpha_plus = 0.0;   // smallest tested alpha with Pr(SAT) <= delta
    double width = 0.0;
    double conf_minus = 0.0;  // confidence radii of the two edges
    double conf_plus = 0.0;
    uint64_t trials_per_point = 0;
};

// Monotone bisection over m for both window edges.  Bisection stops when
// the alpha interval drops below the relative resolution; an edge whose
// final interval still straddles its threshold at the trial budget gets a
// widened confidence radius instead of a sharper guess.
WindowEstimate estimate_window(uint32_t n, double delta, uint64_t trials,
                               uint64_t seed, double resolution = 1e-3,
                               uint32_t workers = 1);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;
};

// least squares on (log x, log y); rejects non-positive inputs
ExponentFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct SweepConfig {
    std::vector<uint32_t> n_values;
    // exactly one axis may be non-empty
    std::vector<double> lambda_values;
    std::vector<double> eps_values;
    std::vector<uint64_t> m_values;
    std::vector<double> p_values;
    bool use_fnp = false;
    bool coupled = false;  // one birthday process per trial across the grid
    uint64_t trials = 100;
    uint64_t literal_samples = 0;  // 0: skip spine estimation
    uint64_t membership_cap = 0;   // 0: default 50 n^(2/3)
    uint64_t master_seed = 1;
    uint32_t workers = 1;
    bool timings = false;  // fill the seconds column (breaks byte-determinism)
};

struct SweepRow {
    uint32_t n = 0;
    uint64_t m = 0;
    double p = 0.0;
    double lambda = 0.0;
    uint64_t trials = 0;
    uint64_t sat_count = 0;
    double sat_prob = 0.0;
    double sat_se = 0.0;
    bool has_spine = false;
    double spine_mean = 0.0;
    double spine_se = 0.0;
    uint64_t undetermined = 0;
    double seconds = 0.0;
};

// Iterates the grid in deterministic order; identical config and seed yield
// identical rows (and bytes) regardless of worker count.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

extern const char* kSweepCsvHeader;
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// fixed-precision number formatting shared by all machine-readable output
std::string format_sig(double value, int significant_digits = 9);

}  // namespace twosat
