#include "twosat/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "twosat/analytics.hpp"
#include "twosat/birthday.hpp"
#include "twosat/digraph.hpp"
#include "twosat/rng.hpp"
#include "twosat/sampler.hpp"
#include "twosat/spine.hpp"

namespace twosat {

namespace {

uint64_t default_cap(uint32_t n) {
    double n23 = std::cbrt(double(n));
    n23 *= n23;
    return uint64_t(50.0 * n23) + 1;
}

Formula sample_point(uint32_t n, const EnsemblePoint& pt, SplitMix64& rng) {
    return pt.use_fnp ? sample_fnp(n, pt.p, rng) : sample_fnm(n, pt.m, rng);
}

// runs fn(trial) for trial = 0..trials-1 over `workers` threads; any result
// ordering is the caller's concern (use per-trial slots)
void parallel_trials(uint64_t trials, uint32_t workers,
                     const std::function<void(uint64_t)>& fn) {
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers <= 1 || trials <= 1) {
        for (uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    for (uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (uint64_t t = w; t < trials; t += workers) fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

EnsemblePoint point_for_lambda(uint32_t n, double lambda, bool use_fnp) {
    double eps = lambda / std::cbrt(double(n));
    if (use_fnp) return EnsemblePoint::fnp((1.0 + eps) / (2.0 * double(n)));
    double m = (1.0 + eps) * double(n);
    return EnsemblePoint::fnm(m < 0 ? 0 : uint64_t(std::llround(m)));
}

double lambda_of_point(uint32_t n, const EnsemblePoint& pt) {
    double eps = pt.use_fnp ? 2.0 * double(n) * pt.p - 1.0
                            : double(pt.m) / double(n) - 1.0;
    return eps * std::cbrt(double(n));
}

ProportionEstimate estimate_sat_probability(uint32_t n, const EnsemblePoint& point,
                                            uint64_t trials, uint64_t seed,
                                            uint64_t point_id, uint32_t workers) {
    if (trials == 0) throw std::invalid_argument("estimate_sat_probability: trials >= 1");
    std::vector<uint8_t> outcome(trials, 0);
    parallel_trials(trials, workers, [&](uint64_t t) {
        SplitMix64 rng(derive_seed(seed, point_id, t));
        Formula f = sample_point(n, point, rng);
        outcome[t] = is_satisfiable(f) ? 1 : 0;
    });
    ProportionEstimate est;
    est.trials = trials;
    for (uint8_t o : outcome) est.successes += o;
    est.estimate = double(est.successes) / double(trials);
    est.se = binomial_se(est.successes, trials);
    est.wilson = wilson_interval(est.successes, trials);
    return est;
}

SpineEstimate estimate_spine_mean(uint32_t n, const EnsemblePoint& point,
                                  uint64_t trials, uint64_t literal_samples,
                                  uint64_t seed, uint64_t cap, uint32_t workers) {
    if (literal_samples == 0)
        throw std::invalid_argument("estimate_spine_mean: literal_samples >= 1");
    if (cap == 0) cap = default_cap(n);

    struct TrialOut {
        uint64_t members = 0, undetermined = 0;
    };
    std::vector<TrialOut> out(trials);
    parallel_trials(trials, workers, [&](uint64_t t) {
        SplitMix64 rng(derive_seed(seed, 0x5eedULL, t));
        Formula f = sample_point(n, point, rng);
        ImplicationDigraph d(f);
        SpineScratch scratch;
        for (uint64_t s = 0; s < literal_samples; ++s) {
            Literal x(uint32_t(rng.next_below(2 * uint64_t(n))));
            Membership r = spine_membership(d, x, cap, scratch);
            if (r == Membership::kMember) ++out[t].members;
            if (r == Membership::kUndetermined) ++out[t].undetermined;
        }
    });

    SpineEstimate est;
    est.trials = trials;
    std::vector<double> trial_means;
    for (const TrialOut& o : out) {
        est.members += o.members;
        est.undetermined += o.undetermined;
        est.samples += literal_samples;
        uint64_t determined = literal_samples - o.undetermined;
        if (determined > 0)
            trial_means.push_back(2.0 * double(n) * double(o.members) /
                                  double(determined));
    }
    if (!trial_means.empty()) {
        double mean = 0.0;
        for (double v : trial_means) mean += v;
        mean /= double(trial_means.size());
        double var = 0.0;
        for (double v : trial_means) var += (v - mean) * (v - mean);
        est.mean = mean;
        est.se = trial_means.size() > 1
                     ? std::sqrt(var / double(trial_means.size() - 1) /
                                 double(trial_means.size()))
                     : 0.0;
    }
    return est;
}

namespace {

struct EdgeSearch {
    double alpha = 0.0;
    double radius = 0.0;
};

// bisection for the alpha where Pr(SAT) crosses `threshold`; `keep_ge` keeps
// the side with estimate >= threshold as the returned edge
EdgeSearch bisect_edge(uint32_t n, double delta_threshold, bool lower_edge,
                       uint64_t trials, uint64_t seed, double resolution,
                       uint32_t workers) {
    auto measure = [&](double alpha) {
        uint64_t m = alpha <= 0 ? 0 : uint64_t(std::llround(alpha * double(n)));
        return estimate_sat_probability(n, EnsemblePoint::fnm(m), trials, seed,
                                        /*point_id=*/m, workers);
    };
    double scale = 1.0 / std::cbrt(double(n));
    double lo = 1.0 - 8.0 * scale;
    double hi = 1.0 + 8.0 * scale;
    if (lo < 0.05) lo = 0.05;

    // bracket: satisfiable side must sit above the threshold, the other below
    ProportionEstimate at_lo = measure(lo);
    for (int tries = 0; at_lo.estimate < delta_threshold && tries < 6; ++tries) {
        lo = std::max(0.01, 1.0 - (1.0 - lo) * 1.6);
        at_lo = measure(lo);
    }
    ProportionEstimate at_hi = measure(hi);
    for (int tries = 0; at_hi.estimate >= delta_threshold && tries < 6; ++tries) {
        hi = 1.0 + (hi - 1.0) * 1.6;
        at_hi = measure(hi);
    }

    ProportionEstimate last = at_lo;
    while (hi - lo > resolution * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        ProportionEstimate pm = measure(mid);
        last = pm;
        if (pm.estimate >= delta_threshold)
            lo = mid;
        else
            hi = mid;
    }

    EdgeSearch e;
    e.alpha = lower_edge ? lo : hi;
    e.radius = 0.5 * (hi - lo);
    // straddling CI at the stopping point widens the reported radius
    if (last.wilson.low < delta_threshold && last.wilson.high > delta_threshold)
        e.radius += (hi - lo);
    return e;
}

}  // namespace

WindowEstimate estimate_window(uint32_t n, double delta, uint64_t trials,
                               uint64_t seed, double resolution, uint32_t workers) {
    if (delta <= 0.0 || delta >= 0.5)
        throw std::invalid_argument("estimate_window: delta in (0, 1/2)");
    WindowEstimate w;
    w.n = n;
    w.delta = delta;
    w.trials_per_point = trials;
    // lower edge: crossing of 1-delta; upper edge: crossing of delta
    EdgeSearch lower =
        bisect_edge(n, 1.0 - delta, /*lower_edge=*/true, trials, seed, resolution, workers);
    EdgeSearch upper =
        bisect_edge(n, delta, /*lower_edge=*/false, trials, seed + 1, resolution, workers);
    w.alpha_minus = lower.alpha;
    w.alpha_plus = upper.alpha;
    w.conf_minus = lower.radius;
    w.conf_plus = upper.radius;
    if (w.alpha_plus < w.alpha_minus) {
        // statistically possible at coarse budgets: report the crossing point
        // with radii covering both estimates rather than guessing an order
        double mid = 0.5 * (w.alpha_plus + w.alpha_minus);
        double spread = 0.5 * (w.alpha_minus - w.alpha_plus);
        w.alpha_minus = w.alpha_plus = mid;
        w.conf_minus += spread;
        w.conf_plus += spread;
    }
    w.width = w.alpha_plus - w.alpha_minus;
    return w;
}

ExponentFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    for (const auto& [x, y] : points)
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("fit_power_law: inputs must be positive");
    ExponentFit fit;
    fit.points = points;
    const size_t k = points.size();
    double sx = 0, sy = 0;
    std::vector<double> lx(k), ly(k);
    for (size_t i = 0; i < k; ++i) {
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
        sx += lx[i];
        sy += ly[i];
    }
    double mx = sx / double(k), my = sy / double(k);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate x values");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (size_t i = 0; i < k; ++i) {
        double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ssr += r * r;
    }
    fit.stderr_slope = k > 2 ? std::sqrt(ssr / double(k - 2) / sxx) : 0.0;
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ssr / syy;
    return fit;
}

namespace {

struct Axis {
    enum Kind { kLambda, kEps, kM, kP } kind;
    size_t size;
};

Axis pick_axis(const SweepConfig& c) {
    int nonempty = (!c.lambda_values.empty()) + (!c.eps_values.empty()) +
                   (!c.m_values.empty()) + (!c.p_values.empty());
    if (nonempty > 1)
        throw std::invalid_argument("run_sweep: more than one axis specified");
    // an empty grid is a valid degenerate sweep (header-only output)
    if (nonempty == 0) return {Axis::kM, 0};
    if (!c.lambda_values.empty()) return {Axis::kLambda, c.lambda_values.size()};
    if (!c.eps_values.empty()) return {Axis::kEps, c.eps_values.size()};
    if (!c.m_values.empty()) return {Axis::kM, c.m_values.size()};
    return {Axis::kP, c.p_values.size()};
}

EnsemblePoint axis_point(const SweepConfig& c, Axis axis, uint32_t n, size_t i) {
    switch (axis.kind) {
        case Axis::kLambda:
            return point_for_lambda(n, c.lambda_values[i], c.use_fnp);
        case Axis::kEps: {
            double eps = c.eps_values[i];
            if (c.use_fnp) return EnsemblePoint::fnp((1.0 + eps) / (2.0 * double(n)));
            return EnsemblePoint::fnm(uint64_t(std::llround((1.0 + eps) * double(n))));
        }
        case Axis::kM:
            return EnsemblePoint::fnm(c.m_values[i]);
        default:
            return EnsemblePoint::fnp(c.p_values[i]);
    }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    Axis axis = pick_axis(config);
    if (config.trials == 0) throw std::invalid_argument("run_sweep: trials >= 1");
    if (config.coupled && config.literal_samples != 0)
        throw std::invalid_argument("run_sweep: coupled mode is SAT-only");

    std::vector<SweepRow> rows;
    uint64_t point_id = 0;
    for (uint32_t n : config.n_values) {
        std::vector<EnsemblePoint> points;
        for (size_t i = 0; i < axis.size; ++i)
            points.push_back(axis_point(config, axis, n, i));

        if (config.coupled) {
            // one birthday process per trial, evaluated at every grid level:
            // SAT indicators are then exactly non-increasing along the grid
            std::vector<double> p_levels;
            for (const EnsemblePoint& pt : points)
                p_levels.push_back(pt.use_fnp ? pt.p : p_for_m(n, pt.m));
            double p_max = *std::max_element(p_levels.begin(), p_levels.end());
            std::vector<std::vector<uint8_t>> sat(points.size(),
                                                  std::vector<uint8_t>(config.trials, 0));
            uint64_t base_point = point_id;
            parallel_trials(config.trials, config.workers, [&](uint64_t t) {
                BirthdayProcess proc(n, derive_seed(config.master_seed, base_point, t));
                auto births = proc.births_below(p_max);
                Formula f;
                f.n = n;
                for (size_t i = 0; i < points.size(); ++i) {
                    f.clauses.clear();
                    for (const auto& [b, c] : births) {
                        if (b >= p_levels[i]) break;
                        f.clauses.push_back(c);
                    }
                    sat[i][t] = is_satisfiable(f) ? 1 : 0;
                }
            });
            for (size_t i = 0; i < points.size(); ++i) {
                SweepRow row;
                row.n = n;
                row.m = points[i].use_fnp ? m_for_p(n, points[i].p) : points[i].m;
                row.p = p_levels[i];
                row.lambda = lambda_of_point(n, points[i]);
                row.trials = config.trials;
                for (uint8_t s : sat[i]) row.sat_count += s;
                row.sat_prob = double(row.sat_count) / double(config.trials);
                row.sat_se = binomial_se(row.sat_count, config.trials);
                rows.push_back(row);
                ++point_id;
            }
            continue;
        }

        for (const EnsemblePoint& pt : points) {
            auto t0 = std::chrono::steady_clock::now();
            SweepRow row;
            row.n = n;
            row.m = pt.use_fnp ? m_for_p(n, pt.p) : pt.m;
            row.p = pt.use_fnp ? pt.p : p_for_m(n, pt.m);
            row.lambda = lambda_of_point(n, pt);
            row.trials = config.trials;
            ProportionEstimate sat = estimate_sat_probability(
                n, pt, config.trials, config.master_seed, point_id, config.workers);
            row.sat_count = sat.successes;
            row.sat_prob = sat.estimate;
            row.sat_se = sat.se;
            if (config.literal_samples > 0) {
                SpineEstimate sp = estimate_spine_mean(
                    n, pt, config.trials, config.literal_samples,
                    derive_seed(config.master_seed, point_id, 0x5eedULL),
                    config.membership_cap, config.workers);
                row.has_spine = true;
                row.spine_mean = sp.mean;
                row.spine_se = sp.se;
                row.undetermined = sp.undetermined;
            }
            if (config.timings) {
                auto t1 = std::chrono::steady_clock::now();
                row.seconds = std::chrono::duration<double>(t1 - t0).count();
            }
            rows.push_back(row);
            ++point_id;
        }
    }
    return rows;
}

std::string format_sig(double value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return buf;
}

const char* kSweepCsvHeader =
    "n,m,p,lambda,trials,sat_count,sat_prob,sat_se,spine_mean,spine_se,"
    "undetermined,seconds";

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepCsvHeader << "\n";
    for (const SweepRow& r : rows) {
        out << r.n << "," << r.m << "," << format_sig(r.p) << ","
            << format_sig(r.lambda) << "," << r.trials << "," << r.sat_count << ","
            << format_sig(r.sat_prob) << "," << format_sig(r.sat_se) << ",";
        if (r.has_spine)
            out << format_sig(r.spine_mean) << "," << format_sig(r.spine_se);
        else
            out << ",";
        out << "," << r.undetermined << ",";
        char sec[32];
        std::snprintf(sec, sizeof(sec), "%.3f", r.seconds);
        out << sec << "\n";
    }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_sweep_csv(rows, out);
    return out.str();
}

}  // namespace twosat
