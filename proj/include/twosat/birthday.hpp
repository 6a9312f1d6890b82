#pragma once

#include <algorithm>
#include <utility>

#include "twosat/formula.hpp"
#include "twosat/rng.hpp"
#include "twosat/sampler.hpp"

namespace twosat {

// Clause-birthday coupling: every possible clause C gets an independent
// uniform birthday U_C in [0,1), materialized lazily from a keyed hash of
// (seed, clause index).  The formula at level p consists of exactly the
// clauses with birthday < p, so the formulas are nested in p by construction
// and each level is marginally distributed as the independent-clause
// ensemble at that p.
class BirthdayProcess {
  public:
    BirthdayProcess(uint32_t n, uint64_t seed) : n_(n), seed_(seed) {}

    uint32_t n() const { return n_; }
    uint64_t seed() const { return seed_; }

    double birthday(const Clause& c) const {
        uint64_t h = mix13(seed_ ^ mix13(clause_to_index(c) + 0x9e3779b97f4a7c15ULL));
        return double(h >> 11) * 0x1.0p-53;
    }

    Formula formula_at(double p) const {
        Formula f;
        f.n = n_;
        f.ensemble = EnsembleTag::process(p);
        uint64_t universe = clause_universe_size(n_);
        for (uint64_t idx = 0; idx < universe; ++idx) {
            Clause c = index_to_clause(idx);
            if (birthday(c) < p) f.clauses.push_back(c);
        }
        return f;
    }

    // One scan of the universe for callers that need several levels of the
    // same process: all clauses with birthday < p_max, sorted by birthday.
    // formula_at(p) for p <= p_max is exactly the prefix with birthday < p.
    std::vector<std::pair<double, Clause>> births_below(double p_max) const {
        std::vector<std::pair<double, Clause>> out;
        uint64_t universe = clause_universe_size(n_);
        for (uint64_t idx = 0; idx < universe; ++idx) {
            Clause c = index_to_clause(idx);
            double b = birthday(c);
            if (b < p_max) out.emplace_back(b, c);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

  private:
    uint32_t n_;
    uint64_t seed_;
};

}  // namespace twosat
