#include "twosat/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace twosat {

namespace {

// open-addressing set of clause indices; clause indices are < 2n(n-1) so the
// all-ones sentinel is free
class IndexSet {
  public:
    explicit IndexSet(uint64_t expected) {
        uint64_t cap = 16;
        while (cap < 2 * expected + 8) cap <<= 1;
        slots_.assign(cap, UINT64_MAX);
        mask_ = cap - 1;
    }

    bool insert(uint64_t x) {
        uint64_t at = mix13(x) & mask_;
        while (slots_[at] != UINT64_MAX) {
            if (slots_[at] == x) return false;
            at = (at + 1) & mask_;
        }
        slots_[at] = x;
        return true;
    }

  private:
    std::vector<uint64_t> slots_;
    uint64_t mask_ = 0;
};

}  // namespace

uint64_t clause_to_index(const Clause& c) {
    uint64_t i = c.a().variable();
    uint64_t j = c.b().variable();
    uint64_t pol_i = c.a().negated();
    uint64_t pol_j = c.b().negated();
    // canonical clause order guarantees i < j
    uint64_t pair = (j - 1) * (j - 2) / 2 + (i - 1);
    return 4 * pair + 2 * pol_i + pol_j;
}

Clause index_to_clause(uint64_t index) {
    uint64_t pair = index / 4;
    uint64_t pol_i = (index / 2) & 1;
    uint64_t pol_j = index & 1;
    // invert the colex rank: largest j with (j-1)(j-2)/2 <= pair
    uint64_t j = (uint64_t)((3.0 + std::sqrt(8.0 * (double)pair + 1.0)) / 2.0);
    while ((j - 1) * (j - 2) / 2 > pair) --j;
    while (j * (j - 1) / 2 <= pair) ++j;
    uint64_t i = pair - (j - 1) * (j - 2) / 2 + 1;
    Literal la(uint32_t(2 * (i - 1) + pol_i));
    Literal lb(uint32_t(2 * (j - 1) + pol_j));
    return Clause(la, lb);
}

Formula sample_fnm(uint32_t n, uint64_t m, SplitMix64& rng) {
    uint64_t universe = clause_universe_size(n);
    if (m > universe)
        throw std::invalid_argument("sample_fnm: m exceeds clause universe 2n(n-1)");

    // Floyd's distinct-sampling: O(m) memory, no rejection loops near m = N
    std::vector<uint64_t> picked;
    picked.reserve(m);
    IndexSet seen(m);
    for (uint64_t j = universe - m; j < universe; ++j) {
        uint64_t t = rng.next_below(j + 1);
        if (seen.insert(t)) {
            picked.push_back(t);
        } else {
            seen.insert(j);
            picked.push_back(j);
        }
    }
    // Floyd's order is biased; shuffle for a uniform insertion order
    for (uint64_t k = m; k > 1; --k) {
        uint64_t r = rng.next_below(k);
        std::swap(picked[k - 1], picked[r]);
    }

    Formula f;
    f.n = n;
    f.ensemble = EnsembleTag::fnm(m);
    f.clauses.reserve(m);
    for (uint64_t idx : picked) f.clauses.push_back(index_to_clause(idx));
    return f;
}

Formula sample_fnp(uint32_t n, double p, SplitMix64& rng) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("sample_fnp: p outside [0,1]");
    Formula f;
    f.n = n;
    f.ensemble = EnsembleTag::fnp(p);
    uint64_t universe = clause_universe_size(n);
    if (p <= 0.0 || universe == 0) return f;
    if (p >= 1.0) {
        f.clauses.reserve(universe);
        for (uint64_t idx = 0; idx < universe; ++idx)
            f.clauses.push_back(index_to_clause(idx));
        return f;
    }
    uint64_t pos = rng.next_geometric_skip(p);
    while (pos < universe) {
        f.clauses.push_back(index_to_clause(pos));
        uint64_t skip = rng.next_geometric_skip(p);
        if (skip > universe) break;
        pos += skip + 1;
    }
    return f;
}

}  // namespace twosat
