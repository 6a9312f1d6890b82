#pragma once

#include <cstdint>
#include <vector>

#include "twosat/formula.hpp"
#include "twosat/rng.hpp"

namespace twosat {
namespace oracle {

// Exhaustive-enumeration limits, enforced before exponential work begins.
struct OracleLimits {
    uint32_t max_truth_table_vars = 20;
    uint32_t max_subformula_clauses = 16;
};

// truth-table satisfiability
bool brute_sat(const Formula& f, const OracleLimits& limits = {});

// Spine by definition: {x : exists H subset of F, H SAT and H ^ x UNSAT},
// enumerating all 2^m subformulas; the mixed formula H ^ x is decided by
// truth table directly.  Returns literals sorted by code.
std::vector<Literal> brute_spine(const Formula& f, const OracleLimits& limits = {});

// literals FALSE in every assignment achieving the minimum violated-clause
// count; sorted by code
std::vector<Literal> brute_backbone(const Formula& f, const OracleLimits& limits = {});

// Monte Carlo frequency that all k vertices of the random digraph D_{k,p}
// (each directed edge independent with probability p) are reachable from
// vertex 1.
double reach_all_probability_mc(uint32_t k, double p, uint64_t samples,
                                uint64_t seed);

}  // namespace oracle
}  // namespace twosat
