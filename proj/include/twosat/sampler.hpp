#pragma once

#include "twosat/formula.hpp"
#include "twosat/rng.hpp"

namespace twosat {

// Number of distinct 2-clauses on n variables: N = 2n(n-1).
inline uint64_t clause_universe_size(uint64_t n) {
    return n < 2 ? 0 : 2 * n * (n - 1);
}

// Fixed bijection between clause indices 0..2n(n-1)-1 and clauses, used so
// that a (n, seed) pair reproduces the same formula across versions.
// index = 4 * pair_rank(i, j) + 2 * pol_i + pol_j, where i < j are the two
// variables (1-based), pol is 0 for the positive literal and 1 for the
// negated one, and pair_rank is the colexicographic rank
// pair_rank(i, j) = (j-1)(j-2)/2 + (i-1).
uint64_t clause_to_index(const Clause& c);
Clause index_to_clause(uint64_t index);

// Uniformly random m-subset of the clause universe, stored in a uniformly
// random insertion order (Floyd's sampling followed by a Fisher-Yates
// shuffle).  Throws std::invalid_argument when m exceeds the universe.
Formula sample_fnm(uint32_t n, uint64_t m, SplitMix64& rng);

// Each clause included independently with probability p, via geometric
// skipping over clause indices (O(expected clause count)).
Formula sample_fnp(uint32_t n, double p, SplitMix64& rng);

}  // namespace twosat
