// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Run a single criterion with --only <id>; --workers overrides the default.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "twosat/analytics.hpp"
#include "twosat/birthday.hpp"
#include "twosat/digraph.hpp"
#include "twosat/dimacs.hpp"
#include "twosat/experiments.hpp"
#include "twosat/hourglass.hpp"
#include "twosat/oracle.hpp"
#include "twosat/sampler.hpp"
#include "twosat/spine.hpp"
#include "twosat/stats.hpp"
#include "twosat/trimmed.hpp"

using namespace twosat;

namespace {

uint32_t g_workers = 2;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome pass(std::string d) { return {true, std::move(d)}; }
Outcome fail(std::string d) { return {false, std::move(d)}; }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// 1. linear-time SAT decision agrees with the truth table on 10^4 instances
Outcome criterion_sat_agreement() {
    SplitMix64 rng(101);
    for (int it = 0; it < 10000; ++it) {
        uint32_t n = 1 + uint32_t(rng.next_below(10));
        uint64_t m =
            rng.next_below(std::min<uint64_t>(25, clause_universe_size(n)) + 1);
        Formula f = sample_fnm(n, m, rng);
        if (is_satisfiable(f) != oracle::brute_sat(f))
            return fail("mismatch at instance " + std::to_string(it) + ":\n" +
                        write_dimacs(f));
    }
    return pass("10000 instances, zero mismatches");
}

// 2. spine via the digraph equals the spine by definition on 10^3 instances
Outcome criterion_spine_equivalence() {
    SplitMix64 rng(102);
    for (int it = 0; it < 1000; ++it) {
        uint32_t n = 1 + uint32_t(rng.next_below(6));
        uint64_t m =
            rng.next_below(std::min<uint64_t>(10, clause_universe_size(n)) + 1);
        Formula f = sample_fnm(n, m, rng);
        if (spine(f).members != oracle::brute_spine(f))
            return fail("mismatch:\n" + write_dimacs(f));
    }
    return pass("1000 instances, exact agreement");
}

// 3. backbone contained in the spine, equal on satisfiable instances
Outcome criterion_backbone_relations() {
    SplitMix64 rng(102);  // same corpus shape as criterion 2
    for (int it = 0; it < 1000; ++it) {
        uint32_t n = 1 + uint32_t(rng.next_below(6));
        uint64_t m =
            rng.next_below(std::min<uint64_t>(10, clause_universe_size(n)) + 1);
        Formula f = sample_fnm(n, m, rng);
        auto bb = oracle::brute_backbone(f);
        auto sp = oracle::brute_spine(f);
        if (!std::includes(sp.begin(), sp.end(), bb.begin(), bb.end()))
            return fail("backbone not within spine:\n" + write_dimacs(f));
        if (oracle::brute_sat(f) && bb != sp)
            return fail("backbone != spine on SAT instance:\n" + write_dimacs(f));
    }
    return pass("1000 instances, zero violations");
}

// 4. digraph reach-all probability equals random-graph connectivity
Outcome criterion_reach_all() {
    ConnectedGraphTable table(6);
    const uint64_t samples = 100000;
    std::string detail;
    for (uint32_t k : {3u, 4u, 5u}) {
        for (double p : {0.2, 0.5}) {
            double exact = table.connectivity_probability(k, p);
            double mc = oracle::reach_all_probability_mc(k, p, samples, 104 + k);
            double sigma = std::sqrt(exact * (1.0 - exact) / double(samples));
            double dev = std::abs(mc - exact) / sigma;
            detail += fmt("(k=%u,p=%.1f: %.1f sd) ", k, p, dev);
            if (dev > 3.0) return fail(detail + "exceeds 3 sigma");
        }
    }
    return pass(detail);
}

// 5. generative trimmed out-graph sizes follow the exact component law
Outcome criterion_trimmed_distribution() {
    const uint32_t n = 30;
    const double p = 1.0 / 60.0;
    const uint64_t runs = 100000;
    SplitMix64 rng(105);
    std::vector<uint64_t> counts(n, 0);
    TrimmedOptions opt;
    opt.record_tests = false;
    for (uint64_t i = 0; i < runs; ++i) {
        TrimmedOutGraph g = trimmed_out_graph_generative(
            n, p, Literal(uint32_t(rng.next_below(2 * n))), rng, opt);
        counts[g.size() - 1]++;
    }
    ConnectedGraphTable table(n);
    std::vector<double> pmf;
    for (uint32_t k = 1; k <= n; ++k) pmf.push_back(q_nk(table, n, p, k));
    ChiSquareResult chi = chi_square_compare(counts, pmf);
    if (chi.p_value <= 0.001)
        return fail(fmt("chi2=%.2f dof=%llu p=%.2g", chi.statistic,
                        (unsigned long long)chi.dof, chi.p_value));
    return pass(fmt("chi2=%.2f dof=%llu p=%.3f over 10^5 searches", chi.statistic,
                    (unsigned long long)chi.dof, chi.p_value));
}

// 6. strictly distinct out-set frequencies match the closed form
Outcome criterion_out_set_law() {
    const uint32_t n = 12;
    const double p = 1.0 / 24.0;
    const uint64_t samples = 1000000;
    SplitMix64 rng(106);
    std::vector<uint64_t> hits(n + 1, 0);
    for (uint64_t s = 0; s < samples; ++s) {
        Formula f = sample_fnp(n, p, rng);
        ImplicationDigraph d(f);
        std::vector<Literal> l = out_set(d, Literal::positive(1));
        if (is_strictly_distinct(l)) hits[l.size()]++;
    }
    ConnectedGraphTable table(n);
    std::string detail;
    for (uint32_t k = 1; k <= 6; ++k) {
        double expect = p_nk(table, n, p, k);
        double got = double(hits[k]) / double(samples);
        double sigma = std::sqrt(expect * (1.0 - expect) / double(samples));
        double dev = std::abs(got - expect) / sigma;
        detail += fmt("(k=%u: %.1f sd) ", k, dev);
        if (dev > 4.0) return fail(detail + "exceeds 4 sigma");
    }
    return pass(detail);
}

// 7. exact identities on a grid
Outcome criterion_identities() {
    ConnectedGraphTable table(25);
    for (uint64_t n : {8ull, 15ull, 25ull}) {
        for (double p : {0.004, 0.01, 0.03, 0.06, 0.1}) {
            double qsum = 0.0;
            for (uint32_t k = 1; k <= n; ++k) {
                double q = q_nk(table, n, p, k);
                double pk = p_nk(table, n, p, k);
                if (pk > q * (1.0 + 1e-12))
                    return fail(fmt("P>Q at n=%llu p=%g k=%u",
                                    (unsigned long long)n, p, k));
                double rs = r_nk(n, p, k) * table.s_pk_exact(k, p * (2.0 - p));
                if (std::abs(q - rs) > 1e-9 * std::max(q, rs))
                    return fail(fmt("Q != R*S at n=%llu p=%g k=%u (rel %.2g)",
                                    (unsigned long long)n, p, k,
                                    std::abs(q - rs) / std::max(q, rs)));
                qsum += q;
            }
            if (std::abs(qsum - 1.0) > 1e-9)
                return fail(fmt("sum Q = %.12f at n=%llu p=%g", qsum,
                                (unsigned long long)n, p));
        }
    }
    return pass("P<=Q, Q=R*S (1e-9), sum Q=1 (1e-9) on the full grid");
}

// 8. window width scales like n^(-1/3)
Outcome criterion_window_exponent() {
    std::vector<std::pair<double, double>> widths;
    std::string detail;
    for (uint32_t n : {2048u, 4096u, 8192u, 16384u, 32768u, 65536u}) {
        WindowEstimate w = estimate_window(n, 0.4, 2000, 108, 1e-3, g_workers);
        widths.push_back({double(n), w.width});
        detail += fmt("(n=%u w=%.4f) ", n, w.width);
    }
    ExponentFit f = fit_power_law(widths);
    detail += fmt("slope=%.3f+-%.3f", f.slope, f.stderr_slope);
    if (f.slope < -0.41 || f.slope > -0.25) return fail(detail);
    return pass(detail);
}

// 9. critical spine scaling E|S| ~ n^(2/3)
Outcome criterion_critical_spine() {
    std::vector<std::pair<double, double>> pts;
    std::string detail;
    for (uint32_t n : {1024u, 2048u, 4096u, 8192u, 16384u, 32768u, 65536u}) {
        SpineEstimate e =
            estimate_spine_mean(n, EnsemblePoint::fnm(n), 400, 300, 109, 0, g_workers);
        pts.push_back({double(n), e.mean});
        detail += fmt("(n=%u S=%.0f) ", n, e.mean);
    }
    ExponentFit f = fit_power_law(pts);
    detail += fmt("slope=%.3f+-%.3f", f.slope, f.stderr_slope);
    if (f.slope < 0.60 || f.slope > 0.74) return fail(detail);
    return pass(detail);
}

// 10. subcritical spine expectation near (1/2) lambda^-2 n^(2/3)
Outcome criterion_subcritical_spine() {
    const uint32_t n = 100000;
    EnsemblePoint pt = point_for_lambda(n, -4.0, false);
    SpineEstimate e = estimate_spine_mean(n, pt, 60, 3000, 110, 0, g_workers);
    double target = 0.5 * std::pow(double(n), 2.0 / 3.0) / 16.0;
    double ratio = e.mean / target;
    std::string detail = fmt("E|S|=%.1f (se %.1f) target=%.1f ratio=%.2f undet=%llu",
                             e.mean, e.se, target, ratio,
                             (unsigned long long)e.undetermined);
    if (ratio < 0.3 || ratio > 3.0) return fail(detail);
    return pass(detail);
}

// 11. supercritical spine density near 2 theta(eps)
Outcome criterion_supercritical_spine() {
    const uint32_t n = 100000;
    uint64_t m = uint64_t(std::llround(1.2 * double(n)));
    SpineEstimate e =
        estimate_spine_mean(n, EnsemblePoint::fnm(m), 60, 500, 111, 0, g_workers);
    double density = e.mean / (2.0 * double(n));
    double target = theta(0.2);
    double rel = std::abs(density / target - 1.0);
    std::string detail = fmt("density=%.5f theta(0.2)=%.5f rel=%.3f undet=%llu",
                             density, target, rel,
                             (unsigned long long)e.undetermined);
    if (rel > 0.10) return fail(detail);
    return pass(detail);
}

// 12. satisfiability tails on both sides of the window
Outcome criterion_sat_tails() {
    std::string detail;
    // below: (1-P)|lambda|^3 at lambda=-4, constant fit at the middle size
    std::vector<double> v;
    const std::array<uint32_t, 3> sizes{4096, 16384, 65536};
    const std::array<uint64_t, 3> trials{150000, 100000, 45000};
    for (size_t i = 0; i < sizes.size(); ++i) {
        EnsemblePoint pt = point_for_lambda(sizes[i], -4.0, false);
        ProportionEstimate e = estimate_sat_probability(sizes[i], pt, trials[i],
                                                        112, sizes[i], g_workers);
        v.push_back((1.0 - e.estimate) * 64.0);
        detail += fmt("(n=%u unsat=%llu (1-P)*64=%.3f) ", sizes[i],
                      (unsigned long long)(trials[i] - e.successes), v.back());
    }
    double c = v[1];
    if (c <= 0.0) return fail(detail + "no unsat instances at the anchor size");
    for (double x : {v[0], v[2]}) {
        double ratio = x / c;
        if (ratio < 0.2 || ratio > 5.0)
            return fail(detail + fmt("ratio %.2f outside [0.2, 5]", ratio));
    }
    // above: -ln P grows roughly linearly in n at fixed eps = 0.2
    std::vector<double> nl;
    const std::array<uint32_t, 3> sizes2{1024, 2048, 4096};
    const std::array<uint64_t, 3> trials2{25000, 60000, 150000};
    for (size_t i = 0; i < sizes2.size(); ++i) {
        uint64_t m = uint64_t(std::llround(1.2 * double(sizes2[i])));
        ProportionEstimate e = estimate_sat_probability(
            sizes2[i], EnsemblePoint::fnm(m), trials2[i], 113, sizes2[i], g_workers);
        if (e.successes == 0) return fail(detail + "no SAT instances observed");
        nl.push_back(-std::log(e.estimate));
        detail += fmt("(n=%u -lnP=%.3f) ", sizes2[i], nl.back());
    }
    for (size_t i = 1; i < nl.size(); ++i) {
        if (nl[i] <= nl[i - 1]) return fail(detail + "-lnP not increasing");
        double ratio = nl[i] / nl[i - 1];
        detail += fmt("[ratio %.2f] ", ratio);
        if (ratio < 1.4 || ratio > 2.8)
            return fail(detail + "slope ratio outside [1.4, 2.8]");
    }
    return pass(detail);
}

// 13. the order-parameter function
Outcome criterion_theta() {
    for (double eps :
         {1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        double th = theta(eps);
        double residual = std::abs(1.0 - th - std::exp(-(1.0 + eps) * th));
        if (residual >= 1e-12)
            return fail(fmt("residual %.2g at eps=%g", residual, eps));
    }
    double r = theta(0.01) / 0.01;
    if (r < 1.9 || r > 2.1) return fail(fmt("theta(0.01)/0.01 = %.4f", r));
    double t1 = theta(1.0);
    if (std::abs(t1 - 0.796812) > 1e-5) return fail(fmt("theta(1) = %.8f", t1));
    double series = theta_series(1.0, 10000);
    if (std::abs(t1 - series) > 1e-9)
        return fail(fmt("series cross-check differs: %.12f vs %.12f", t1, series));
    return pass(fmt("residuals < 1e-12; theta(0.01)/0.01=%.3f; theta(1)=%.6f", r, t1));
}

// 14. component-exploration walk against the exact component-size law
Outcome criterion_component_walk() {
    const uint32_t n = 20;
    const double ptilde = 0.1;
    const uint64_t samples = 100000;
    SplitMix64 rng(114);
    std::vector<uint64_t> counts(n, 0);
    for (uint64_t s = 0; s < samples; ++s)
        counts[component_size_walk(n, ptilde, rng) - 1]++;
    ConnectedGraphTable table(n);
    std::vector<double> pmf;
    for (uint32_t k = 1; k <= n; ++k)
        pmf.push_back(component_size_pmf(table, n, ptilde, k));
    ChiSquareResult chi = chi_square_compare(counts, pmf);
    if (chi.p_value <= 0.001)
        return fail(fmt("chi2=%.2f p=%.2g", chi.statistic, chi.p_value));
    return pass(fmt("chi2=%.2f dof=%llu p=%.3f", chi.statistic,
                    (unsigned long long)chi.dof, chi.p_value));
}

// 15. hourglass suite: verification, spine absorption, giant threshold
Outcome criterion_hourglasses() {
    std::string detail;
    // every finder's outputs verify
    {
        SplitMix64 rng(115);
        for (int it = 0; it < 300; ++it) {
            uint32_t n = 10 + uint32_t(rng.next_below(100));
            Formula f = sample_fnm(
                n, rng.next_below(clause_universe_size(n) / 8 + 1), rng);
            ImplicationDigraph d(f);
            Hourglass h =
                extract_hourglass_at(d, Literal(uint32_t(rng.next_below(2 * n))));
            if (!verify_hourglass(d, h)) return fail("extraction failed to verify");
        }
        for (uint64_t seed = 0; seed < 3; ++seed) {
            SplitMix64 r2(1150 + seed);
            DisjointHourglassResult res = find_disjoint_hourglasses(20000, 3.0, r2);
            ImplicationDigraph revealed(res.revealed);
            for (const Hourglass& h : res.hourglasses)
                if (!verify_hourglass(revealed, h))
                    return fail("disjoint finder output failed to verify");
        }
        detail += "(finders verify) ";
    }
    // spine absorption law on constructed cases
    {
        SplitMix64 rng(1151);
        int tested = 0;
        while (tested < 1000) {
            uint32_t n = 30 + uint32_t(rng.next_below(171));
            Formula f = sample_fnm(n, uint64_t(0.7 * n), rng);
            ImplicationDigraph d(f);
            Hourglass h =
                extract_hourglass_at(d, Literal(uint32_t(rng.next_below(2 * n))));
            if (h.out_portion.size() < 2) continue;
            ++tested;
            Literal u = h.out_portion[rng.next_below(h.out_portion.size())];
            Literal v = u;
            while (v == u) v = h.out_portion[rng.next_below(h.out_portion.size())];
            Formula g = f;
            g.clauses.push_back(Clause(u.negate(), v.negate()));
            SpineReport s = spine(g);
            if (!s.contains(h.center))
                return fail("center not absorbed into the spine");
            for (Literal x : h.in_portion)
                if (!s.contains(x))
                    return fail("in-portion literal not absorbed into the spine");
            if (h.in_portion.size() >= 2) {
                Formula g2 = g;
                g2.clauses.push_back(Clause(h.in_portion[0], h.in_portion[1]));
                if (is_satisfiable(g2))
                    return fail("clause on two absorbed in-portion literals kept SAT");
            }
        }
        detail += "(absorption holds on 1000 cases) ";
    }
    // giant hourglass threshold: min portion >= 0.1 lambda n^(2/3)
    {
        const uint32_t n = 100000;
        const double lambda = 4.0;
        EnsemblePoint pt = point_for_lambda(n, lambda, false);
        double threshold = 0.1 * lambda * std::pow(double(n), 2.0 / 3.0);
        int ok = 0;
        size_t low = SIZE_MAX;
        for (uint64_t seed = 0; seed < 20; ++seed) {
            SplitMix64 rng(derive_seed(115, 2, seed));
            Formula f = sample_fnm(n, pt.m, rng);
            ImplicationDigraph d(f);
            Hourglass h = find_giant_hourglass(d, 200, rng);
            if (!verify_hourglass(d, h)) return fail("giant output failed to verify");
            low = std::min(low, h.min_portion());
            if (double(h.min_portion()) >= threshold) ++ok;
        }
        detail += fmt("(giant: %d/20 seeds >= %.0f, min seen %zu)", ok, threshold, low);
        if (ok < 16) return fail(detail);
    }
    return pass(detail);
}

// 16. fnm and fnp agree at matched densities
Outcome criterion_ensemble_interchange() {
    const uint32_t n = 500;
    const uint64_t trials = 10000;
    std::string detail;
    for (double lambda : {-2.0, 0.0, 2.0}) {
        EnsemblePoint pp = point_for_lambda(n, lambda, true);
        uint64_t m = m_for_p(n, pp.p);
        ProportionEstimate ep = estimate_sat_probability(
            n, pp, trials, 116, uint64_t(lambda + 10), g_workers);
        ProportionEstimate em = estimate_sat_probability(
            n, EnsemblePoint::fnm(m), trials, 117, uint64_t(lambda + 10), g_workers);
        double se = std::sqrt(ep.se * ep.se + em.se * em.se);
        double dev = se > 0 ? std::abs(ep.estimate - em.estimate) / se : 0.0;
        detail += fmt("(lam=%g: fnp=%.4f fnm=%.4f %.1f se) ", lambda, ep.estimate,
                      em.estimate, dev);
        if (dev > 3.0) return fail(detail + "exceeds 3 combined se");
    }
    return pass(detail);
}

// 17. CLI byte-determinism across repetitions and worker counts
Outcome criterion_cli_determinism() {
    auto run = [](const std::string& args) {
        std::string cmd = std::string(TWOSAT_CLI_PATH) + " " + args + " 2>/dev/null";
        std::string output;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return std::string("<popen failed>");
        char buf[4096];
        size_t got;
        while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
        pclose(pipe);
        return output;
    };
    std::string gen1 = run("gen --n 300 --m 330 --seed 42");
    std::string gen2 = run("gen --n 300 --m 330 --seed 42");
    if (gen1.empty() || gen1 != gen2) return fail("gen bytes differ across runs");
    std::string sweep_base =
        "sweep --n 96 --lambda -2 0 2 --trials 200 --literal-samples 60 --seed 5";
    std::string s1 = run(sweep_base + " --workers 1");
    std::string s2 = run(sweep_base + " --workers 4");
    std::string s3 = run(sweep_base + " --workers 2");
    if (s1.empty() || s1 != s2 || s1 != s3)
        return fail("sweep bytes depend on worker count");
    std::string w1 = run(
        "window --n 512 --delta 0.4 --trials 200 --resolution 0.005 --seed 3 "
        "--workers 1");
    std::string w2 = run(
        "window --n 512 --delta 0.4 --trials 200 --resolution 0.005 --seed 3 "
        "--workers 2");
    if (w1.empty() || w1 != w2) return fail("window bytes depend on worker count");
    return pass("gen, sweep, window byte-identical across reps and workers");
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = atoi(argv[++i]);
        if (!std::strcmp(argv[i], "--workers") && i + 1 < argc)
            g_workers = uint32_t(atoi(argv[++i]));
    }

    std::vector<Criterion> criteria{
        {1, "oracle SAT agreement", criterion_sat_agreement},
        {2, "spine definition equivalence", criterion_spine_equivalence},
        {3, "backbone relations", criterion_backbone_relations},
        {4, "reach-all equals connectivity", criterion_reach_all},
        {5, "trimmed search size distribution", criterion_trimmed_distribution},
        {6, "strictly distinct out-set law", criterion_out_set_law},
        {7, "P/Q/R/S identities", criterion_identities},
        {8, "window width exponent", criterion_window_exponent},
        {9, "critical spine scaling", criterion_critical_spine},
        {10, "subcritical spine constant", criterion_subcritical_spine},
        {11, "supercritical spine density", criterion_supercritical_spine},
        {12, "satisfiability tails", criterion_sat_tails},
        {13, "theta function", criterion_theta},
        {14, "component-size walk", criterion_component_walk},
        {15, "hourglass suite", criterion_hourglasses},
        {16, "ensemble interchangeability", criterion_ensemble_interchange},
        {17, "CLI determinism", criterion_cli_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        printf("[%s] %2d %-34s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", c.id,
               c.name, secs, o.detail.c_str());
        fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures) printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
