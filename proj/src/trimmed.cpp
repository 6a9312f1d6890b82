#include "twosat/trimmed.hpp"

#include <algorithm>
#include <set>

namespace twosat {

TrimmedSearcher::TrimmedSearcher(uint32_t n, double p, SplitMix64* rng)
    : n_(n), p_(p), rng_(rng), pos_(n + 1, UINT32_MAX),
      epos_(n + 1, UINT32_MAX), vindex_(2 * n, UINT32_MAX) {
    fill_pool_all();
}

TrimmedSearcher::TrimmedSearcher(const ImplicationDigraph* d, uint32_t n)
    : n_(n), digraph_(d), pos_(n + 1, UINT32_MAX),
      epos_(n + 1, UINT32_MAX), vindex_(2 * n, UINT32_MAX) {
    fill_pool_all();
}

void TrimmedSearcher::fill_pool_all() {
    pool_.clear();
    pool_.reserve(n_);
    for (uint32_t v = 1; v <= n_; ++v) {
        pos_[v] = uint32_t(pool_.size());
        pool_.push_back(v);
    }
}

void TrimmedSearcher::remove_from_pool(uint32_t var) {
    uint32_t at = pos_[var];
    if (at == UINT32_MAX) return;
    uint32_t last = pool_.back();
    pool_[at] = last;
    pos_[last] = at;
    pool_.pop_back();
    pos_[var] = UINT32_MAX;
}

namespace {

// search-direction successor view: in-graph searches walk predecessors,
// which by skew symmetry are the negations of the successors of ~v
inline void search_successors(const ImplicationDigraph& d, uint32_t v,
                              SearchDir dir, std::vector<uint32_t>& out) {
    out.clear();
    if (dir == SearchDir::kOut) {
        auto s = d.successors(v);
        out.assign(s.begin(), s.end());
    } else {
        for (uint32_t t : d.successors(v ^ 1)) out.push_back(t ^ 1);
    }
}

// search edge a -> b stands for the real edge b -> a when searching inward
inline bool has_search_edge(const ImplicationDigraph& d, uint32_t from,
                            uint32_t to, SearchDir dir) {
    return dir == SearchDir::kOut ? d.has_edge(from, to) : d.has_edge(to, from);
}

inline TrimmedOutGraph::PairRecord make_record(uint32_t var_a, uint32_t var_b,
                                               bool present) {
    TrimmedOutGraph::PairRecord r;
    r.var_lo = std::min(var_a, var_b);
    r.var_hi = std::max(var_a, var_b);
    r.present = present;
    return r;
}

}  // namespace

TrimmedOutGraph TrimmedSearcher::search(Literal root, SearchDir dir,
                                        size_t reserve, const TrimmedOptions& opt) {
    TrimmedOutGraph g;
    g.root = root;
    g.out_direction = (dir == SearchDir::kOut);
    g.tests_recorded = opt.record_tests;

    // eligible variables for this search: the first `reserve` pool entries,
    // never the root's variable
    std::vector<uint32_t> eligible;
    eligible.reserve(std::min(reserve, pool_.size()));
    for (size_t i = 0; i < pool_.size() && eligible.size() < reserve; ++i)
        if (pool_[i] != root.variable()) eligible.push_back(pool_[i]);
    for (size_t i = 0; i < eligible.size(); ++i) epos_[eligible[i]] = uint32_t(i);

    auto drop_eligible = [&](uint32_t var) {
        uint32_t at = epos_[var];
        if (at == UINT32_MAX) return;
        uint32_t last = eligible.back();
        eligible[at] = last;
        epos_[last] = at;
        eligible.pop_back();
        epos_[var] = UINT32_MAX;
    };

    auto adjoin_vertex = [&](Literal l, uint32_t parent_idx) {
        vindex_[l.code()] = uint32_t(g.vertices.size());
        g.vertices.push_back(l);
        g.parent.push_back(parent_idx);
    };

    adjoin_vertex(root, UINT32_MAX);
    std::set<uint32_t> frontier;
    frontier.insert(root.code());

    std::vector<uint32_t> consumed;  // graph variables, removed from pool at the end
    std::vector<std::pair<uint32_t, uint32_t>> yes_hits;  // (variable, polarity)
    std::vector<uint32_t> succ_buf;

    while (!frontier.empty() && !g.aborted) {
        // substep 1: lexicographically smallest frontier literal
        uint32_t v = *frontier.begin();
        frontier.erase(frontier.begin());
        uint32_t v_idx = vindex_[v];

        // substep 2: test v -> w for both literals of every eligible variable
        yes_hits.clear();
        g.test_count += 2 * uint64_t(eligible.size());
        if (digraph_) {
            search_successors(*digraph_, v, dir, succ_buf);
            for (uint32_t t : succ_buf) {
                uint32_t var = t / 2 + 1;
                if (epos_[var] != UINT32_MAX) yes_hits.emplace_back(var, t & 1);
            }
            std::sort(yes_hits.begin(), yes_hits.end());
            yes_hits.erase(std::unique(yes_hits.begin(), yes_hits.end()),
                           yes_hits.end());
        } else {
            // one Bernoulli(p) slot per directed edge; geometric skipping
            // visits exactly the yes slots
            uint64_t slots = 2 * uint64_t(eligible.size());
            uint64_t pos = rng_->next_geometric_skip(p_);
            while (pos < slots) {
                yes_hits.emplace_back(eligible[pos / 2], uint32_t(pos & 1));
                uint64_t skip = rng_->next_geometric_skip(p_);
                if (skip >= slots - pos - 1) break;
                pos += skip + 1;
            }
            std::sort(yes_hits.begin(), yes_hits.end());
        }

        if (opt.record_tests) {
            std::vector<uint32_t> vars(eligible.begin(), eligible.end());
            std::sort(vars.begin(), vars.end());
            size_t hit = 0;
            for (uint32_t var : vars) {
                while (hit < yes_hits.size() && yes_hits[hit].first < var) ++hit;
                bool present = hit < yes_hits.size() && yes_hits[hit].first == var;
                g.tests.push_back(make_record(v / 2 + 1, var, present));
            }
        }

        // substep 3: one new literal per yes variable; when both polarities
        // answered yes only the unnegated literal becomes new
        std::vector<Literal> new_literals;
        for (size_t i = 0; i < yes_hits.size();) {
            uint32_t var = yes_hits[i].first;
            bool pos_yes = false, neg_yes = false;
            while (i < yes_hits.size() && yes_hits[i].first == var) {
                (yes_hits[i].second == 0 ? pos_yes : neg_yes) = true;
                ++i;
            }
            new_literals.push_back(neg_yes && !pos_yes ? Literal::negative(var)
                                                       : Literal::positive(var));
        }

        // substeps 4, 5: adjoin new literals and their tree edges
        std::vector<uint32_t> old_frontier(frontier.begin(), frontier.end());
        for (Literal w : new_literals) {
            adjoin_vertex(w, v_idx);
            g.edges.emplace_back(Literal(v), w);
            drop_eligible(w.variable());
            consumed.push_back(w.variable());
            frontier.insert(w.code());
        }
        if (g.vertices.size() >= opt.vertex_cap && !frontier.empty()) {
            g.aborted = true;
            break;
        }

        // substep 6: tests among (new, frontier-but-not-new) and (new, new)
        auto pair_test = [&](uint32_t w, uint32_t f) {
            bool wy, fy;
            if (digraph_) {
                wy = has_search_edge(*digraph_, w, f, dir);
                fy = has_search_edge(*digraph_, f, w, dir);
            } else {
                wy = rng_->next_bernoulli(p_);
                fy = rng_->next_bernoulli(p_);
            }
            g.test_count += 2;
            if (opt.record_tests)
                g.tests.push_back(make_record(w / 2 + 1, f / 2 + 1, wy || fy));
            if (wy)
                g.edges.emplace_back(Literal(w), Literal(f));
            else if (fy)
                g.edges.emplace_back(Literal(f), Literal(w));
        };
        for (Literal wl : new_literals)
            for (uint32_t f : old_frontier) pair_test(wl.code(), f);
        for (size_t i = 0; i < new_literals.size(); ++i)
            for (size_t j = i + 1; j < new_literals.size(); ++j)
                pair_test(new_literals[i].code(), new_literals[j].code());
    }

    // scratch cleanup: every touched variable is either still eligible or
    // was consumed; every touched vertex slot is in g.vertices
    for (uint32_t var : eligible) epos_[var] = UINT32_MAX;
    for (uint32_t var : consumed) {
        epos_[var] = UINT32_MAX;
        remove_from_pool(var);
    }
    for (Literal l : g.vertices) vindex_[l.code()] = UINT32_MAX;

    if (dir == SearchDir::kIn)
        for (auto& e : g.edges) std::swap(e.first, e.second);
    return g;
}

TrimmedOutGraph trimmed_out_graph(const ImplicationDigraph& d, Literal x,
                                  const TrimmedOptions& opt) {
    TrimmedSearcher s(&d, d.variable_count());
    return s.search(x, SearchDir::kOut, d.variable_count(), opt);
}

TrimmedOutGraph trimmed_out_graph(const Formula& f, Literal x,
                                  const TrimmedOptions& opt) {
    ImplicationDigraph d(f);
    return trimmed_out_graph(d, x, opt);
}

TrimmedOutGraph trimmed_out_graph_generative(uint32_t n, double p, Literal x,
                                             SplitMix64& rng,
                                             const TrimmedOptions& opt) {
    TrimmedSearcher s(n, p, &rng);
    return s.search(x, SearchDir::kOut, n, opt);
}

}  // namespace twosat
