#include "twosat/hourglass.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "twosat/spine.hpp"

namespace twosat {

namespace {

// BFS within `allowed` (literal codes), following successors (forward) or
// predecessors (backward); returns the set of allowed vertices reached.
std::vector<uint32_t> restricted_closure(const ImplicationDigraph& d,
                                         uint32_t start, bool forward,
                                         const std::set<uint32_t>& allowed) {
    std::vector<uint32_t> reached;
    std::set<uint32_t> seen;
    reached.push_back(start);
    seen.insert(start);
    for (size_t head = 0; head < reached.size(); ++head) {
        uint32_t u = reached[head];
        auto step = [&](uint32_t w) {
            if (allowed.count(w) && seen.insert(w).second) reached.push_back(w);
        };
        if (forward) {
            for (uint32_t w : d.successors(u)) step(w);
        } else {
            for (uint32_t w : d.successors(u ^ 1)) step(w ^ 1);
        }
    }
    return reached;
}

}  // namespace

bool verify_hourglass(const ImplicationDigraph& d, const Hourglass& h) {
    // portions are sets, disjoint, and do not contain the center
    std::set<uint32_t> in_codes, out_codes;
    for (Literal l : h.in_portion)
        if (l == h.center || !in_codes.insert(l.code()).second) return false;
    for (Literal l : h.out_portion)
        if (l == h.center || in_codes.count(l.code()) ||
            !out_codes.insert(l.code()).second)
            return false;

    // {v} u I u O strictly distinct
    std::vector<Literal> all;
    all.push_back(h.center);
    all.insert(all.end(), h.in_portion.begin(), h.in_portion.end());
    all.insert(all.end(), h.out_portion.begin(), h.out_portion.end());
    if (!is_strictly_distinct(all)) return false;

    // every x in I reaches v inside I u {v}; every y in O is reached from v
    // inside O u {v}
    in_codes.insert(h.center.code());
    out_codes.insert(h.center.code());
    if (restricted_closure(d, h.center.code(), false, in_codes).size() !=
        in_codes.size())
        return false;
    if (restricted_closure(d, h.center.code(), true, out_codes).size() !=
        out_codes.size())
        return false;
    return true;
}

bool verify_hourglass(const Formula& f, const Hourglass& h) {
    return verify_hourglass(ImplicationDigraph(f), h);
}

Hourglass extract_hourglass_at(const ImplicationDigraph& d, Literal v) {
    Hourglass h;
    h.center = v;
    std::vector<uint8_t> var_used(d.variable_count() + 1, 0);
    var_used[v.variable()] = 1;

    struct Wave {
        bool forward;
        std::vector<Literal>* portion;
        std::vector<uint32_t> frontier;
        std::vector<uint8_t> seen;
        std::vector<uint32_t> next;
    };
    Wave out{true, &h.out_portion, {v.code()}, {}, {}};
    Wave in{false, &h.in_portion, {v.code()}, {}, {}};
    out.seen.assign(d.vertex_count(), 0);
    in.seen.assign(d.vertex_count(), 0);
    out.seen[v.code()] = in.seen[v.code()] = 1;

    // the two BFS waves advance level by level, the out-portion's level
    // first each round; a literal is admitted only if its variable is still
    // unused by {v} u I u O, ties within a level toward the smaller code
    auto advance = [&](Wave& wave) {
        wave.next.clear();
        for (uint32_t u : wave.frontier) {
            auto step = [&](uint32_t w) {
                if (!wave.seen[w]) {
                    wave.seen[w] = 1;
                    wave.next.push_back(w);
                }
            };
            if (wave.forward) {
                for (uint32_t w : d.successors(u)) step(w);
            } else {
                for (uint32_t w : d.successors(u ^ 1)) step(w ^ 1);
            }
        }
        std::sort(wave.next.begin(), wave.next.end());
        wave.frontier.clear();
        for (uint32_t w : wave.next) {
            uint32_t var = w / 2 + 1;
            if (var_used[var]) continue;
            var_used[var] = 1;
            wave.portion->push_back(Literal(w));
            wave.frontier.push_back(w);
        }
    };

    while (!out.frontier.empty() || !in.frontier.empty()) {
        advance(out);
        advance(in);
    }
    return h;
}

namespace {

struct Targets {
    double p;
    uint64_t reserve;
    uint64_t portion_min;      // K
    uint64_t tree_lo, tree_hi; // [2K, 4K]
    uint64_t tail_count;
    uint64_t candidate_budget;
    uint64_t var_budget;
    uint64_t attempts;
    uint64_t pool_floor;
};

Targets derive_targets(uint32_t n, double t, const DisjointHourglassParams& prm) {
    Targets tg;
    double n13 = std::cbrt(double(n));
    double n23 = n13 * n13;
    tg.p = (1.0 - t / n13) / (2.0 * double(n));
    if (tg.p < 0) tg.p = 0;
    double buffer = t * n23;
    tg.reserve = buffer < n ? uint64_t(double(n) - buffer) : 0;
    double k = prm.portion_scale * n23 / (t * t);
    tg.portion_min = std::max<uint64_t>(2, uint64_t(std::ceil(k)));
    tg.tree_lo = 2 * tg.portion_min;
    tg.tree_hi = 4 * tg.portion_min;
    tg.tail_count = std::max<uint64_t>(1, uint64_t(std::ceil(n13 / t)));
    double rate = prm.c * (1.0 - std::exp(-prm.c));
    tg.candidate_budget =
        std::max<uint64_t>(1, uint64_t(std::ceil(4.0 * std::exp(1.0) / rate * n13 / t)));
    tg.var_budget =
        std::max<uint64_t>(tg.tree_hi, uint64_t(std::ceil(prm.b * n23 / (t * t))));
    tg.attempts = std::max<uint64_t>(
        prm.min_attempts, uint64_t(std::ceil(t * t * t / prm.b)));
    tg.pool_floor = uint64_t(prm.min_pool_fraction * double(n));
    return tg;
}

DisjointHourglassResult run_disjoint_search(TrimmedSearcher& searcher, uint32_t n,
                                            double t, SplitMix64& rng,
                                            const DisjointHourglassParams& prm) {
    Targets tg = derive_targets(n, t, prm);
    DisjointHourglassResult result;
    result.revealed.n = n;
    std::set<Clause> revealed_set;

    auto reveal_edges = [&](const TrimmedOutGraph& g) {
        // digraph edge u -> w corresponds to clause (~u v w)
        for (const auto& e : g.edges) {
            Clause c(e.first.negate(), e.second);
            if (revealed_set.insert(c).second) result.revealed.clauses.push_back(c);
        }
    };

    TrimmedOptions opt;
    opt.record_tests = prm.record_tests;

    for (uint64_t attempt = 0; attempt < tg.attempts; ++attempt) {
        if (searcher.pool().size() < tg.pool_floor) break;
        ++result.attempts_run;
        uint64_t vars_used = 0;
        bool found = false;

        for (uint64_t cand = 0; cand < tg.candidate_budget && !found; ++cand) {
            if (vars_used >= tg.var_budget) break;
            if (searcher.pool().size() < tg.pool_floor) break;
            ++result.candidates_tried;

            uint32_t root_var =
                searcher.pool()[rng.next_below(searcher.pool().size())];
            Literal root = rng.next_bernoulli(0.5) ? Literal::negative(root_var)
                                                   : Literal::positive(root_var);
            searcher.remove_from_pool(root_var);
            ++vars_used;

            opt.vertex_cap = tg.var_budget - vars_used + 1;  // +1: root counted
            TrimmedOutGraph tree = searcher.search(root, SearchDir::kOut,
                                                   tg.reserve, opt);
            vars_used += tree.size() - 1;
            reveal_edges(tree);
            if (tree.aborted) break;  // attempt's budget is gone
            if (!tree.is_tree() || tree.size() < tg.tree_lo ||
                tree.size() > tg.tree_hi)
                continue;
            ++result.trees_in_window;

            // random non-root vertex w; v = middle of the root -> w path,
            // ties resolved toward w
            uint32_t w_idx = 1 + uint32_t(rng.next_below(tree.size() - 1));
            std::vector<uint32_t> path;  // indices root .. w
            for (uint32_t at = w_idx; at != UINT32_MAX; at = tree.parent[at])
                path.push_back(at);
            std::reverse(path.begin(), path.end());
            uint64_t len = path.size() - 1;
            if (double(len) < std::sqrt(2.0 * double(tree.size()))) continue;
            uint32_t v_pos = uint32_t((len + 1) / 2);
            uint32_t v_idx = path[v_pos];

            // descendant count of v
            std::vector<uint32_t> subtree(tree.size(), 1);
            for (uint32_t i = uint32_t(tree.size()) - 1; i > 0; --i)
                subtree[tree.parent[i]] += subtree[i];
            uint64_t descendants = subtree[v_idx] - 1;
            if (2 * descendants < tree.size()) continue;
            ++result.promising_vertices;

            // promising: explore trimmed in-graphs of the first tail vertices
            for (uint64_t zi = 0; zi < tg.tail_count && zi < v_pos && !found; ++zi) {
                if (vars_used >= tg.var_budget) break;
                Literal z = tree.vertices[path[zi]];
                opt.vertex_cap = tg.var_budget - vars_used + 1;
                TrimmedOutGraph ingraph =
                    searcher.search(z, SearchDir::kIn, tg.reserve, opt);
                vars_used += ingraph.size() - 1;
                reveal_edges(ingraph);
                ++result.in_graphs_explored;
                if (ingraph.aborted) {
                    vars_used = tg.var_budget;
                    break;
                }
                if (ingraph.size() < tg.portion_min) continue;

                Hourglass h;
                h.center = tree.vertices[v_idx];
                // out-portion: proper descendants of v in the tree
                for (uint32_t i = 0; i < tree.size(); ++i) {
                    if (i == v_idx) continue;
                    for (uint32_t at = i; at != UINT32_MAX; at = tree.parent[at]) {
                        if (at == v_idx) {
                            h.out_portion.push_back(tree.vertices[i]);
                            break;
                        }
                    }
                }
                // in-portion: the in-graph plus the path z .. v, minus v
                h.in_portion.assign(ingraph.vertices.begin(),
                                    ingraph.vertices.end());
                for (uint32_t pi = uint32_t(zi) + 1; pi < v_pos; ++pi)
                    h.in_portion.push_back(tree.vertices[path[pi]]);
                result.hourglasses.push_back(std::move(h));
                found = true;
            }
        }
        result.variables_consumed += vars_used;
    }
    return result;
}

}  // namespace

DisjointHourglassResult find_disjoint_hourglasses(
    uint32_t n, double t, SplitMix64& rng, const DisjointHourglassParams& params) {
    Targets tg = derive_targets(n, t, params);
    TrimmedSearcher searcher(n, tg.p, &rng);
    return run_disjoint_search(searcher, n, t, rng, params);
}

DisjointHourglassResult find_disjoint_hourglasses(
    const Formula& f, double t, SplitMix64& rng,
    const DisjointHourglassParams& params) {
    ImplicationDigraph d(f);
    TrimmedSearcher searcher(&d, f.n);
    return run_disjoint_search(searcher, f.n, t, rng, params);
}

Hourglass find_giant_hourglass(const ImplicationDigraph& d, uint32_t centers,
                               SplitMix64& rng) {
    std::vector<Literal> candidates;
    for (uint32_t i = 0; i < centers; ++i)
        candidates.push_back(Literal(uint32_t(rng.next_below(d.vertex_count()))));
    // representatives of contradictory-cycle components
    SccResult scc = strongly_connected_components(d);
    std::set<uint32_t> contradictory;
    for (uint32_t v = 0; v < d.vertex_count(); v += 2)
        if (scc.comp[v] == scc.comp[v + 1]) contradictory.insert(scc.comp[v]);
    std::set<uint32_t> taken;
    for (uint32_t v = 0; v < d.vertex_count() && taken.size() < contradictory.size();
         ++v) {
        uint32_t comp = scc.comp[v];
        if (contradictory.count(comp) && taken.insert(comp).second)
            candidates.push_back(Literal(v));
    }

    Hourglass best;
    bool have = false;
    for (Literal v : candidates) {
        Hourglass h = extract_hourglass_at(d, v);
        if (!have || h.min_portion() > best.min_portion()) {
            best = std::move(h);
            have = true;
        }
    }
    return best;
}

Hourglass find_giant_hourglass(const Formula& f, uint32_t centers, SplitMix64& rng) {
    return find_giant_hourglass(ImplicationDigraph(f), centers, rng);
}

}  // namespace twosat
