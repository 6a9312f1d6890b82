#include "twosat/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace twosat {
namespace oracle {

namespace {

// clause evaluation under the assignment encoded by bitmask (bit i = x_{i+1})
inline bool clause_true(const Clause& c, uint64_t mask) {
    bool a = ((mask >> (c.a().variable() - 1)) & 1) != c.a().negated();
    bool b = ((mask >> (c.b().variable() - 1)) & 1) != c.b().negated();
    return a || b;
}

}  // namespace

bool brute_sat(const Formula& f, const OracleLimits& limits) {
    if (f.n > limits.max_truth_table_vars)
        throw std::invalid_argument("brute_sat: n exceeds truth-table limit");
    const uint64_t assignments = 1ULL << f.n;
    for (uint64_t mask = 0; mask < assignments; ++mask) {
        bool ok = true;
        for (const Clause& c : f.clauses)
            if (!clause_true(c, mask)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::vector<Literal> brute_spine(const Formula& f, const OracleLimits& limits) {
    if (f.clauses.size() > limits.max_subformula_clauses)
        throw std::invalid_argument("brute_spine: clause count exceeds limit");
    if (f.n > limits.max_truth_table_vars)
        throw std::invalid_argument("brute_spine: n exceeds truth-table limit");

    const uint32_t m = uint32_t(f.clauses.size());
    const uint64_t assignments = 1ULL << f.n;
    // violated[a] = bitmask of clauses violated under assignment a
    std::vector<uint32_t> violated(assignments, 0);
    for (uint64_t a = 0; a < assignments; ++a)
        for (uint32_t ci = 0; ci < m; ++ci)
            if (!clause_true(f.clauses[ci], a)) violated[a] |= (1u << ci);

    // subformula H (mask h) is SAT iff some assignment violates none of it;
    // H ^ x is SAT iff some assignment with x TRUE does
    std::vector<uint8_t> in_spine(2 * f.n, 0);
    const uint64_t submasks = 1ULL << m;
    for (uint64_t h = 0; h < submasks; ++h) {
        uint64_t sat_any = 0;                      // is H satisfiable at all
        std::vector<uint8_t> lit_ok(2 * f.n, 0);   // literal can be TRUE under H
        for (uint64_t a = 0; a < assignments; ++a) {
            if (violated[a] & h) continue;
            sat_any = 1;
            for (uint32_t v = 0; v < f.n; ++v) {
                bool val = (a >> v) & 1;
                lit_ok[2 * v + (val ? 0 : 1)] = 1;
            }
        }
        if (!sat_any) continue;
        for (uint32_t code = 0; code < 2 * f.n; ++code)
            if (!lit_ok[code]) in_spine[code] = 1;
    }

    std::vector<Literal> spine;
    for (uint32_t code = 0; code < 2 * f.n; ++code)
        if (in_spine[code]) spine.push_back(Literal(code));
    return spine;
}

std::vector<Literal> brute_backbone(const Formula& f, const OracleLimits& limits) {
    if (f.n > limits.max_truth_table_vars)
        throw std::invalid_argument("brute_backbone: n exceeds truth-table limit");
    const uint64_t assignments = 1ULL << f.n;
    uint64_t best = UINT64_MAX;
    std::vector<uint8_t> ever_true(2 * f.n, 0);
    for (uint64_t a = 0; a < assignments; ++a) {
        uint64_t v = 0;
        for (const Clause& c : f.clauses)
            if (!clause_true(c, a)) ++v;
        if (v > best) continue;
        if (v < best) {
            best = v;
            std::fill(ever_true.begin(), ever_true.end(), 0);
        }
        for (uint32_t var = 0; var < f.n; ++var) {
            bool val = (a >> var) & 1;
            ever_true[2 * var + (val ? 0 : 1)] = 1;
        }
    }
    std::vector<Literal> backbone;
    for (uint32_t code = 0; code < 2 * f.n; ++code)
        if (!ever_true[code]) backbone.push_back(Literal(code));
    return backbone;
}

double reach_all_probability_mc(uint32_t k, double p, uint64_t samples,
                                uint64_t seed) {
    if (k == 0) throw std::invalid_argument("reach_all_probability_mc: k >= 1");
    SplitMix64 rng(seed);
    uint64_t hits = 0;
    std::vector<std::vector<uint32_t>> adj(k);
    std::vector<uint8_t> seen(k);
    std::vector<uint32_t> queue;
    for (uint64_t s = 0; s < samples; ++s) {
        for (auto& a : adj) a.clear();
        for (uint32_t i = 0; i < k; ++i)
            for (uint32_t j = 0; j < k; ++j)
                if (i != j && rng.next_bernoulli(p)) adj[i].push_back(j);
        std::fill(seen.begin(), seen.end(), 0);
        queue.clear();
        queue.push_back(0);
        seen[0] = 1;
        uint32_t reached = 1;
        for (size_t head = 0; head < queue.size(); ++head)
            for (uint32_t w : adj[queue[head]])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    queue.push_back(w);
                }
        if (reached == k) ++hits;
    }
    return double(hits) / double(samples);
}

}  // namespace oracle
}  // namespace twosat
