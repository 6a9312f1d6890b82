#pragma once

#include <cstdint>
#include <vector>

#include "twosat/digraph.hpp"
#include "twosat/formula.hpp"
#include "twosat/rng.hpp"
#include "twosat/trimmed.hpp"

namespace twosat {

// An hourglass (v, I_v, O_v): disjoint strictly distinct portions around a
// central literal, every in-portion literal reaching v inside I_v u {v} and
// every out-portion literal reachable from v inside O_v u {v}.
struct Hourglass {
    Literal center;
    std::vector<Literal> in_portion;
    std::vector<Literal> out_portion;

    size_t min_portion() const {
        return std::min(in_portion.size(), out_portion.size());
    }
};

// Checks all invariants, including path containment by BFS restricted to
// the respective portion.
bool verify_hourglass(const ImplicationDigraph& d, const Hourglass& h);
bool verify_hourglass(const Formula& f, const Hourglass& h);

// Greedy realization: grows the out-portion by BFS from v and then the
// in-portion by reverse BFS into v, admitting a literal only if its variable
// is not yet used by {v} u I u O; ties within a BFS level break toward the
// smaller literal code.  The result always passes verify_hourglass.
Hourglass extract_hourglass_at(const ImplicationDigraph& d, Literal v);

// Parameters of the subcritical disjoint-hourglass procedure.  The paper's
// construction only asserts existence of suitable constants; these defaults
// were calibrated at n = 10^5, t = 4 (see docs/calibration.md).
struct DisjointHourglassParams {
    double c = 0.25;   // success-rate constant: candidate budget per attempt
                       // is ceil(4e / (c(1 - e^-c)) * n^(1/3) / t)
    double b = 100.0;  // per-attempt variable budget is ceil(b * n^(2/3) / t^2)
    double portion_scale = 0.10;  // scales the asymptotic size targets: the
                                  // tree window is [2K, 4K] and portions must
                                  // reach K, with K = portion_scale*n^(2/3)/t^2
    uint64_t min_attempts = 4;       // attempts = max(this, ceil(t^3 / b))
    double min_pool_fraction = 0.4;  // stop when the unused pool drops below
    bool record_tests = false;
};

struct DisjointHourglassResult {
    std::vector<Hourglass> hourglasses;  // variable-disjoint, mutually s.d.
    // Clauses revealed by positive edge tests during the searches; every
    // returned hourglass verifies against this formula (and hence against
    // any superformula).
    Formula revealed;
    uint64_t candidates_tried = 0;
    uint64_t attempts_run = 0;
    uint64_t variables_consumed = 0;
    // stage counters, used when calibrating the constants
    uint64_t trees_in_window = 0;
    uint64_t promising_vertices = 0;
    uint64_t in_graphs_explored = 0;
};

// Subcritical procedure at p = (1 - t n^(-1/3)) / (2n): repeatedly grows a
// trimmed out-graph in a reserve of n - t n^(2/3) unused variables, promotes
// mid-path vertices of suitably large trees, and hunts for a matching
// trimmed in-graph along the tail; each attempt aborts once its variable
// budget is consumed.
DisjointHourglassResult find_disjoint_hourglasses(
    uint32_t n, double t, SplitMix64& rng,
    const DisjointHourglassParams& params = {});

// Same procedure replayed against a concrete formula.
DisjointHourglassResult find_disjoint_hourglasses(
    const Formula& f, double t, SplitMix64& rng,
    const DisjointHourglassParams& params = {});

// Supercritical search: greedy extraction at `centers` uniformly sampled
// literals plus one representative literal per contradictory-cycle strong
// component; returns the hourglass maximizing min(|I|, |O|).
Hourglass find_giant_hourglass(const Formula& f, uint32_t centers, SplitMix64& rng);
Hourglass find_giant_hourglass(const ImplicationDigraph& d, uint32_t centers,
                               SplitMix64& rng);

}  // namespace twosat
