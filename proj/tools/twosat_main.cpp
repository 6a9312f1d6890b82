// twosat: random 2-SAT generation, linear-time solving, spine and hourglass
// structure, exact component-size analytics, and Monte Carlo scaling
// experiments around the satisfiability transition.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twosat/analytics.hpp"
#include "twosat/birthday.hpp"
#include "twosat/digraph.hpp"
#include "twosat/dimacs.hpp"
#include "twosat/experiments.hpp"
#include "twosat/hourglass.hpp"
#include "twosat/oracle.hpp"
#include "twosat/sampler.hpp"
#include "twosat/spine.hpp"
#include "twosat/trimmed.hpp"

using json = nlohmann::ordered_json;
using namespace twosat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitIo = 3;

// all machine-readable output goes through --out (default stdout)
int emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitIo;
    }
    out << payload;
    if (!out) {
        std::cerr << "error: write failed: " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

Formula load_formula(const std::string& path) {
    if (path.empty() || path == "-") {
        DimacsResult r = read_dimacs(std::cin);
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        return r.formula;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    DimacsResult r = read_dimacs(in);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    return r.formula;
}

struct GenSpec {
    uint32_t n = 0;
    int64_t m = -1;
    double p = -1.0;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    bool use_fnp = false;

    EnsemblePoint point() const {
        if (!std::isnan(lambda)) return point_for_lambda(n, lambda, use_fnp);
        if (p >= 0.0) return EnsemblePoint::fnp(p);
        if (m >= 0) return EnsemblePoint::fnm(uint64_t(m));
        throw CLI::ValidationError("one of --m/--p/--lambda is required");
    }

    Formula sample(uint64_t seed) const {
        SplitMix64 rng(seed);
        EnsemblePoint pt = point();
        return pt.use_fnp ? sample_fnp(n, pt.p, rng) : sample_fnm(n, pt.m, rng);
    }
};

void add_gen_options(CLI::App* cmd, GenSpec& spec, bool required_n = true) {
    auto* n = cmd->add_option("--n", spec.n, "variable count");
    if (required_n) n->required();
    cmd->add_option("--m", spec.m, "clause count (fnm ensemble)");
    cmd->add_option("--p", spec.p, "clause probability (fnp ensemble)");
    cmd->add_option("--lambda", spec.lambda,
                    "rescaled control parameter: m = (1 + lambda n^-1/3) n");
    cmd->add_flag("--fnp", spec.use_fnp, "use the fnp ensemble with --lambda");
}

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_gen(const GenSpec& spec, uint64_t seed, const std::string& out) {
    return emit(out, write_dimacs(spec.sample(seed)));
}

int cmd_solve(const std::string& in, const std::string& out, bool with_assignment,
              const std::string& format) {
    Formula f = load_formula(in);
    auto assignment = satisfying_assignment(f);
    bool sat = assignment.has_value();
    std::cerr << (sat ? "SAT" : "UNSAT") << " (n=" << f.n
              << ", m=" << f.clauses.size() << ")\n";
    if (format == "csv") {
        std::ostringstream os;
        os << "n,m,sat\n" << f.n << "," << f.clauses.size() << "," << (sat ? 1 : 0)
           << "\n";
        return emit(out, os.str());
    }
    json j;
    j["n"] = f.n;
    j["m"] = f.clauses.size();
    j["sat"] = sat;
    if (sat && with_assignment) {
        std::vector<int> lits;
        for (uint32_t v = 1; v <= f.n; ++v)
            lits.push_back((*assignment)[v - 1] ? int(v) : -int(v));
        j["assignment"] = lits;
    }
    return emit(out, json_dump(j));
}

int cmd_spine(const Formula& f, bool members, const std::string& out,
              const std::string& format) {
    SpineReport s = spine(f);
    std::cerr << "spine size " << s.size() << " of " << 2 * f.n << " literals\n";
    if (format == "csv") {
        std::ostringstream os;
        os << "n,m,spine_size\n" << f.n << "," << f.clauses.size() << "," << s.size()
           << "\n";
        return emit(out, os.str());
    }
    json j;
    j["n"] = f.n;
    j["m"] = f.clauses.size();
    j["spine_size"] = s.size();
    if (members) {
        std::vector<int64_t> lits;
        for (Literal l : s.members) lits.push_back(l.to_dimacs());
        j["members"] = lits;
    }
    return emit(out, json_dump(j));
}

json hourglass_json(const Hourglass& h, bool verified) {
    json j;
    j["center"] = h.center.to_dimacs();
    j["in_size"] = h.in_portion.size();
    j["out_size"] = h.out_portion.size();
    j["verified"] = verified;
    return j;
}

int cmd_hourglass_giant(const Formula& f, uint32_t centers, uint64_t seed,
                        const std::string& out) {
    ImplicationDigraph d(f);
    SplitMix64 rng(seed);
    Hourglass h = find_giant_hourglass(d, centers, rng);
    return emit(out, json_dump(hourglass_json(h, verify_hourglass(d, h))));
}

int cmd_hourglass_disjoint(uint32_t n, double t, uint64_t seed,
                           const std::string& out) {
    SplitMix64 rng(seed);
    DisjointHourglassResult res = find_disjoint_hourglasses(n, t, rng);
    ImplicationDigraph revealed(res.revealed);
    json arr = json::array();
    for (const Hourglass& h : res.hourglasses)
        arr.push_back(hourglass_json(h, verify_hourglass(revealed, h)));
    json j;
    j["n"] = n;
    j["t"] = t;
    j["count"] = res.hourglasses.size();
    j["attempts"] = res.attempts_run;
    j["candidates"] = res.candidates_tried;
    j["hourglasses"] = arr;
    return emit(out, json_dump(j));
}

int cmd_exact(const std::string& what, uint64_t n, double p, uint32_t kmin,
              uint32_t kmax, double eps_lo, double eps_hi, double eps_step,
              uint32_t max_k, const std::string& out) {
    std::ostringstream os;
    if (what == "theta") {
        os << "eps,theta\n";
        for (double e = eps_lo; e <= eps_hi + 1e-15; e += eps_step)
            os << format_sig(e) << "," << format_sig(theta(e)) << "\n";
        return emit(out, os.str());
    }
    ConnectedGraphTable table(max_k);
    if (kmax > table.max_k()) kmax = table.max_k();
    os << "k," << what << "\n";
    for (uint32_t k = kmin; k <= kmax; ++k) {
        double v;
        if (what == "pnk")
            v = p_nk(table, n, p, k);
        else if (what == "qnk")
            v = q_nk(table, n, p, k);
        else if (what == "rnk")
            v = r_nk(n, p, k);
        else if (what == "spk")
            v = table.s_pk_exact(k, p);
        else if (what == "conn")
            v = table.connectivity_probability(k, p);
        else
            throw CLI::ValidationError("unknown --what: " + what);
        os << k << "," << format_sig(v) << "\n";
    }
    return emit(out, os.str());
}

int cmd_window(uint32_t n, double delta, uint64_t trials, uint64_t seed,
               double resolution, uint32_t workers, const std::string& out) {
    WindowEstimate w = estimate_window(n, delta, trials, seed, resolution, workers);
    json j;
    j["n"] = w.n;
    j["delta"] = w.delta;
    j["alpha_minus"] = format_sig(w.alpha_minus);
    j["alpha_plus"] = format_sig(w.alpha_plus);
    j["width"] = format_sig(w.width);
    j["conf_minus"] = format_sig(w.conf_minus);
    j["conf_plus"] = format_sig(w.conf_plus);
    j["trials_per_point"] = w.trials_per_point;
    std::cerr << "window n=" << n << ": [" << format_sig(w.alpha_minus) << ", "
              << format_sig(w.alpha_plus) << "] width " << format_sig(w.width)
              << "\n";
    return emit(out, json_dump(j));
}

json fit_json(const ExponentFit& f) {
    json j;
    j["slope"] = format_sig(f.slope);
    j["intercept"] = format_sig(f.intercept);
    j["stderr"] = format_sig(f.stderr_slope);
    j["r_squared"] = format_sig(f.r_squared);
    json pts = json::array();
    for (auto& [x, y] : f.points)
        pts.push_back(json::array({format_sig(x), format_sig(y)}));
    j["points"] = pts;
    return j;
}

// beta from the supercritical spine density, the window-width exponent as a
// gamma proxy (width ~ n^(-1/(2 beta + gamma))), and delta from the critical
// spine scaling E|S| ~ n^(delta/(1+delta))
int cmd_exponents(const std::vector<uint32_t>& sizes, uint64_t trials,
                  uint64_t window_trials, uint64_t literal_samples, uint64_t seed,
                  uint32_t workers, const std::string& out) {
    json j;

    std::vector<std::pair<double, double>> critical;
    for (uint32_t n : sizes) {
        SpineEstimate e = estimate_spine_mean(n, EnsemblePoint::fnm(n), trials,
                                              literal_samples, seed, 0, workers);
        critical.push_back({double(n), e.mean});
    }
    ExponentFit critical_fit = fit_power_law(critical);
    double s = critical_fit.slope;
    double delta = s < 1.0 ? s / (1.0 - s) : std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, double>> widths;
    for (uint32_t n : sizes) {
        WindowEstimate w =
            estimate_window(n, 0.4, window_trials, seed + n, 1e-3, workers);
        widths.push_back({double(n), w.width});
    }
    ExponentFit width_fit = fit_power_law(widths);

    std::vector<std::pair<double, double>> density;
    uint32_t n_beta = sizes.back();
    for (double eps : {0.15, 0.2, 0.3, 0.4}) {
        uint64_t m = uint64_t(std::llround((1.0 + eps) * double(n_beta)));
        SpineEstimate e = estimate_spine_mean(n_beta, EnsemblePoint::fnm(m), trials,
                                              literal_samples, seed + 7, 0, workers);
        density.push_back({eps, e.mean / (2.0 * double(n_beta))});
    }
    ExponentFit beta_fit = fit_power_law(density);

    double beta = beta_fit.slope;
    double exponent_sum = -1.0 / width_fit.slope;  // 2 beta + gamma
    j["beta"] = format_sig(beta);
    j["gamma_proxy"] = format_sig(exponent_sum - 2.0 * beta);
    j["delta"] = format_sig(delta);
    j["critical_spine_fit"] = fit_json(critical_fit);
    j["window_width_fit"] = fit_json(width_fit);
    j["density_fit"] = fit_json(beta_fit);
    return emit(out, json_dump(j));
}

struct VerifyReport {
    int failures = 0;
    void check(const std::string& name, bool ok,
               const Formula* counterexample = nullptr) {
        std::cerr << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
        if (!ok) {
            ++failures;
            if (counterexample) {
                std::cerr << "counterexample DIMACS:\n"
                          << write_dimacs(*counterexample);
            }
        }
    }
};

// oracle-agreement and statistical property suite behind `twosat verify`
int cmd_verify(uint64_t seed) {
    VerifyReport rep;
    SplitMix64 rng(seed);

    {
        bool ok = true;
        Formula bad;
        for (int it = 0; it < 10000 && ok; ++it) {
            uint32_t n = 1 + uint32_t(rng.next_below(10));
            uint64_t m =
                rng.next_below(std::min<uint64_t>(25, clause_universe_size(n)) + 1);
            Formula f = sample_fnm(n, m, rng);
            if (is_satisfiable(f) != oracle::brute_sat(f)) {
                ok = false;
                bad = f;
            }
        }
        rep.check("sat agreement: is_satisfiable == brute_sat (10^4 instances)", ok,
                  ok ? nullptr : &bad);
    }
    {
        bool ok = true;
        Formula bad;
        for (int it = 0; it < 500 && ok; ++it) {
            uint32_t n = 1 + uint32_t(rng.next_below(6));
            uint64_t m =
                rng.next_below(std::min<uint64_t>(10, clause_universe_size(n)) + 1);
            Formula f = sample_fnm(n, m, rng);
            if (spine(f).members != oracle::brute_spine(f)) {
                ok = false;
                bad = f;
            }
        }
        rep.check("spine agreement: spine == brute_spine (500 instances)", ok,
                  ok ? nullptr : &bad);
    }
    {
        bool ok = true;
        Formula bad;
        for (int it = 0; it < 500 && ok; ++it) {
            uint32_t n = 1 + uint32_t(rng.next_below(8));
            uint64_t m =
                rng.next_below(std::min<uint64_t>(14, clause_universe_size(n)) + 1);
            Formula f = sample_fnm(n, m, rng);
            auto bb = oracle::brute_backbone(f);
            auto sp = oracle::brute_spine(f);
            bool contained =
                std::includes(sp.begin(), sp.end(), bb.begin(), bb.end());
            bool equal_if_sat = !oracle::brute_sat(f) || bb == sp;
            if (!contained || !equal_if_sat) {
                ok = false;
                bad = f;
            }
        }
        rep.check("backbone: B subset of S, equal when SAT (500 instances)", ok,
                  ok ? nullptr : &bad);
    }
    {
        bool ok = true;
        Formula bad;
        for (int it = 0; it < 300 && ok; ++it) {
            uint32_t n = 2 + uint32_t(rng.next_below(9));
            Formula f = sample_fnm(n, rng.next_below(2 * n + 1), rng);
            ImplicationDigraph d(f);
            for (uint32_t v = 0; v < d.vertex_count() && ok; ++v)
                for (uint32_t w : d.successors(v))
                    if (!d.has_edge(w ^ 1, v ^ 1)) {
                        ok = false;
                        bad = f;
                    }
        }
        rep.check("skew symmetry of the implication digraph", ok,
                  ok ? nullptr : &bad);
    }
    {
        bool ok = true;
        Formula bad;
        for (int it = 0; it < 300 && ok; ++it) {
            uint32_t n = 2 + uint32_t(rng.next_below(9));
            Formula f = sample_fnm(n, rng.next_below(2 * n + 1), rng);
            ImplicationDigraph d(f);
            Literal x(uint32_t(rng.next_below(2 * n)));
            auto ins = in_set(d, x);
            auto mirror = out_set(d, x.negate());
            for (auto& l : mirror) l = l.negate();
            std::sort(mirror.begin(), mirror.end());
            if (ins != mirror) {
                ok = false;
                bad = f;
            }
        }
        rep.check("mirror identity: in_set(x) = ~out_set(~x)", ok,
                  ok ? nullptr : &bad);
    }
    {
        bool ok = true;
        Formula bad;
        for (int it = 0; it < 300 && ok; ++it) {
            uint32_t n = 2 + uint32_t(rng.next_below(11));
            Formula f = sample_fnm(n, rng.next_below(2 * n + 1), rng);
            ImplicationDigraph d(f);
            Literal x(uint32_t(rng.next_below(2 * n)));
            TrimmedOutGraph g = trimmed_out_graph(d, x);
            auto full = out_set(d, x);
            auto got = g.vertices;
            std::sort(got.begin(), got.end());
            bool sd = is_strictly_distinct(full);
            if (!is_strictly_distinct(g.vertices) || (sd != (got == full))) {
                ok = false;
                bad = f;
            }
        }
        rep.check("trimmed out-graph: s.d. vertices; equals L+ iff L+ s.d.", ok,
                  ok ? nullptr : &bad);
    }
    {
        ConnectedGraphTable table(18);
        bool ple_q = true, q_rs = true, q_sum = true;
        for (uint64_t n : {12ull, 18ull}) {
            for (double p : {0.01, 0.03, 0.08}) {
                double sum = 0.0;
                for (uint32_t k = 1; k <= n; ++k) {
                    double q = q_nk(table, n, p, k);
                    sum += q;
                    if (p_nk(table, n, p, k) > q * (1.0 + 1e-12)) ple_q = false;
                    double rs = r_nk(n, p, k) * table.s_pk_exact(k, p * (2.0 - p));
                    if (std::abs(q - rs) > 1e-9 * std::max(q, rs)) q_rs = false;
                }
                if (std::abs(sum - 1.0) > 1e-9) q_sum = false;
            }
        }
        rep.check("P <= Q pointwise", ple_q);
        rep.check("Q = R * S within 1e-9", q_rs);
        rep.check("sum_k Q = 1 within 1e-9", q_sum);
    }
    {
        bool ok = true;
        for (uint64_t s = 0; s < 20 && ok; ++s) {
            BirthdayProcess proc(20, rng());
            Formula lo = proc.formula_at(0.01);
            Formula hi = proc.formula_at(0.03);
            std::set<uint64_t> hiset;
            for (const Clause& c : hi.clauses) hiset.insert(clause_to_index(c));
            for (const Clause& c : lo.clauses)
                if (!hiset.count(clause_to_index(c))) ok = false;
        }
        rep.check("birthday process nesting", ok);
    }
    {
        bool ok = true;
        for (double eps : {0.01, 0.1, 0.5, 1.0, 2.0}) {
            double th = theta(eps);
            if (std::abs(1.0 - th - std::exp(-(1.0 + eps) * th)) > 1e-12) ok = false;
        }
        rep.check("theta fixed-point residual < 1e-12", ok);
    }

    std::cerr << (rep.failures == 0 ? "verify: all properties hold\n"
                                    : "verify: FAILURES present\n");
    return rep.failures == 0 ? kExitOk : kExitVerifyFailed;
}

void apply_config_file(const std::string& path, SweepConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);
    if (j.contains("n_values"))
        cfg.n_values = j["n_values"].get<std::vector<uint32_t>>();
    if (j.contains("lambda_values"))
        cfg.lambda_values = j["lambda_values"].get<std::vector<double>>();
    if (j.contains("eps_values"))
        cfg.eps_values = j["eps_values"].get<std::vector<double>>();
    if (j.contains("m_values"))
        cfg.m_values = j["m_values"].get<std::vector<uint64_t>>();
    if (j.contains("p_values"))
        cfg.p_values = j["p_values"].get<std::vector<double>>();
    if (j.contains("use_fnp")) cfg.use_fnp = j["use_fnp"].get<bool>();
    if (j.contains("coupled")) cfg.coupled = j["coupled"].get<bool>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
    if (j.contains("literal_samples"))
        cfg.literal_samples = j["literal_samples"].get<uint64_t>();
    if (j.contains("membership_cap"))
        cfg.membership_cap = j["membership_cap"].get<uint64_t>();
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<uint64_t>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<uint32_t>();
    if (j.contains("timings")) cfg.timings = j["timings"].get<bool>();
}

std::string rows_to_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json j;
        j["n"] = r.n;
        j["m"] = r.m;
        j["p"] = format_sig(r.p);
        j["lambda"] = format_sig(r.lambda);
        j["trials"] = r.trials;
        j["sat_count"] = r.sat_count;
        j["sat_prob"] = format_sig(r.sat_prob);
        j["sat_se"] = format_sig(r.sat_se);
        if (r.has_spine) {
            j["spine_mean"] = format_sig(r.spine_mean);
            j["spine_se"] = format_sig(r.spine_se);
        }
        j["undetermined"] = r.undetermined;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random 2-SAT transition toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    uint32_t workers = 1;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--out", out, "output path (default stdout)");
    app.add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--workers", workers, "worker threads")->capture_default_str();

    auto* gen = app.add_subcommand("gen", "sample a random formula as DIMACS");
    gen->fallthrough();
    GenSpec gen_spec;
    add_gen_options(gen, gen_spec);

    auto* solve = app.add_subcommand("solve", "decide satisfiability of DIMACS");
    solve->fallthrough();
    std::string solve_in;
    bool solve_assign = false;
    solve->add_option("--in", solve_in, "input DIMACS (default stdin)");
    solve->add_flag("--assign", solve_assign, "include a satisfying assignment");

    auto* spine_cmd = app.add_subcommand("spine", "compute the spine");
    spine_cmd->fallthrough();
    std::string spine_in;
    bool spine_members = false;
    GenSpec spine_gen;
    spine_cmd->add_option("--in", spine_in, "input DIMACS (otherwise use --n/--m)");
    add_gen_options(spine_cmd, spine_gen, /*required_n=*/false);
    spine_cmd->add_flag("--members", spine_members, "list spine literals");

    auto* hg = app.add_subcommand("hourglass", "hourglass structures");
    hg->fallthrough();
    std::string hg_in;
    GenSpec hg_gen;
    uint32_t hg_centers = 200;
    double hg_t = 0.0;
    hg->add_option("--in", hg_in, "input DIMACS (otherwise use --n/--m)");
    add_gen_options(hg, hg_gen, /*required_n=*/false);
    hg->add_option("--centers", hg_centers, "sampled centers for the giant search")
        ->capture_default_str();
    hg->add_option("--disjoint-t", hg_t,
                   "run the subcritical disjoint procedure at this t instead");

    auto* exact = app.add_subcommand("exact", "exact analytics over ranges");
    exact->fallthrough();
    std::string exact_what = "theta";
    uint64_t exact_n = 30;
    double exact_p = 0.01;
    uint32_t exact_kmin = 1, exact_kmax = 30, exact_maxk = 30;
    double eps_lo = 0.0, eps_hi = 1.0, eps_step = 0.05;
    exact->add_option("--what", exact_what, "theta|pnk|qnk|rnk|spk|conn")
        ->capture_default_str();
    exact->add_option("--n", exact_n, "n for pnk/qnk/rnk")->capture_default_str();
    exact->add_option("--p", exact_p, "clause probability")->capture_default_str();
    exact->add_option("--kmin", exact_kmin)->capture_default_str();
    exact->add_option("--kmax", exact_kmax)->capture_default_str();
    exact->add_option("--max-k", exact_maxk, "exact table size")
        ->capture_default_str();
    exact->add_option("--eps-lo", eps_lo)->capture_default_str();
    exact->add_option("--eps-hi", eps_hi)->capture_default_str();
    exact->add_option("--eps-step", eps_step)->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over a grid");
    sweep->fallthrough();
    SweepConfig sweep_cfg;
    std::string sweep_config_path;
    sweep->add_option("--config", sweep_config_path, "JSON config file");
    auto* opt_n = sweep->add_option("--n", sweep_cfg.n_values, "n grid");
    auto* opt_lambda =
        sweep->add_option("--lambda", sweep_cfg.lambda_values, "lambda grid");
    auto* opt_eps = sweep->add_option("--eps", sweep_cfg.eps_values, "epsilon grid");
    auto* opt_m = sweep->add_option("--m", sweep_cfg.m_values, "m grid");
    auto* opt_p = sweep->add_option("--p", sweep_cfg.p_values, "p grid");
    auto* opt_trials =
        sweep->add_option("--trials", sweep_cfg.trials, "trials per point");
    auto* opt_samples =
        sweep->add_option("--literal-samples", sweep_cfg.literal_samples,
                          "literal samples per trial (spine estimation)");
    auto* opt_cap =
        sweep->add_option("--cap", sweep_cfg.membership_cap, "membership BFS cap");
    auto* opt_fnp = sweep->add_flag("--fnp", sweep_cfg.use_fnp, "fnp ensemble");
    auto* opt_coupled =
        sweep->add_flag("--coupled", sweep_cfg.coupled, "birthday-coupled trials");
    auto* opt_timings = sweep->add_flag(
        "--timings", sweep_cfg.timings,
        "fill the seconds column with wall time (non-deterministic bytes)");

    auto* window = app.add_subcommand("window", "scaling-window estimate");
    window->fallthrough();
    uint32_t win_n = 4096;
    double win_delta = 0.4;
    uint64_t win_trials = 2000;
    double win_resolution = 1e-3;
    window->add_option("--n", win_n, "variable count")->capture_default_str();
    window->add_option("--delta", win_delta)->capture_default_str();
    window->add_option("--trials", win_trials)->capture_default_str();
    window->add_option("--resolution", win_resolution)->capture_default_str();

    auto* expo = app.add_subcommand("exponents", "critical exponent estimates");
    expo->fallthrough();
    std::vector<uint32_t> expo_sizes{1024, 2048, 4096, 8192};
    uint64_t expo_trials = 100, expo_window_trials = 400, expo_samples = 200;
    expo->add_option("--sizes", expo_sizes, "n grid")->capture_default_str();
    expo->add_option("--trials", expo_trials)->capture_default_str();
    expo->add_option("--window-trials", expo_window_trials)->capture_default_str();
    expo->add_option("--literal-samples", expo_samples)->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "oracle-agreement suite");
    verify_cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_spec, seed, out);
        if (solve->parsed()) return cmd_solve(solve_in, out, solve_assign, format);
        if (spine_cmd->parsed()) {
            Formula f =
                spine_in.empty() ? spine_gen.sample(seed) : load_formula(spine_in);
            return cmd_spine(f, spine_members, out, format);
        }
        if (hg->parsed()) {
            if (hg_t > 0.0) {
                if (hg_gen.n == 0)
                    throw CLI::ValidationError("--n required with --disjoint-t");
                return cmd_hourglass_disjoint(hg_gen.n, hg_t, seed, out);
            }
            Formula f = hg_in.empty() ? hg_gen.sample(seed) : load_formula(hg_in);
            return cmd_hourglass_giant(f, hg_centers, seed, out);
        }
        if (exact->parsed())
            return cmd_exact(exact_what, exact_n, exact_p, exact_kmin, exact_kmax,
                             eps_lo, eps_hi, eps_step, exact_maxk, out);
        if (sweep->parsed()) {
            SweepConfig cfg;
            if (!sweep_config_path.empty()) apply_config_file(sweep_config_path, cfg);
            // explicit flags override the config file
            if (opt_n->count()) cfg.n_values = sweep_cfg.n_values;
            if (opt_lambda->count()) cfg.lambda_values = sweep_cfg.lambda_values;
            if (opt_eps->count()) cfg.eps_values = sweep_cfg.eps_values;
            if (opt_m->count()) cfg.m_values = sweep_cfg.m_values;
            if (opt_p->count()) cfg.p_values = sweep_cfg.p_values;
            if (opt_trials->count()) cfg.trials = sweep_cfg.trials;
            if (opt_samples->count()) cfg.literal_samples = sweep_cfg.literal_samples;
            if (opt_cap->count()) cfg.membership_cap = sweep_cfg.membership_cap;
            if (opt_fnp->count()) cfg.use_fnp = sweep_cfg.use_fnp;
            if (opt_coupled->count()) cfg.coupled = sweep_cfg.coupled;
            if (opt_timings->count()) cfg.timings = sweep_cfg.timings;
            cfg.master_seed = seed;
            cfg.workers = workers;
            std::vector<SweepRow> rows = run_sweep(cfg);
            return emit(out, format == "json" ? rows_to_json(rows) : sweep_csv(rows));
        }
        if (window->parsed())
            return cmd_window(win_n, win_delta, win_trials, seed, win_resolution,
                              workers, out);
        if (expo->parsed())
            return cmd_exponents(expo_sizes, expo_trials, expo_window_trials,
                                 expo_samples, seed, workers, out);
        if (verify_cmd->parsed()) return cmd_verify(seed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimacsError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
