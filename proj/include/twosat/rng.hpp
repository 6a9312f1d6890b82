#pragma once

#include <cmath>
#include <cstdint>

namespace twosat {

// Stafford's mix13 finalizer (a variant of the SplitMix64 finalizer).
// This is the single named mix function through which every stream in the
// project is seeded; the constants below are part of the reproducibility
// contract and must not change between versions.
inline uint64_t mix13(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based derivation of per-task seeds: a trial is a pure function of
// (master seed, point id, trial index), independent of worker scheduling.
inline uint64_t derive_seed(uint64_t master, uint64_t point, uint64_t trial = 0) {
    uint64_t h = mix13(trial + 0x9e3779b97f4a7c15ULL);
    h = mix13(h ^ (point + 0x9e3779b97f4a7c15ULL));
    return mix13(h ^ master);
}

// SplitMix64: golden-gamma counter with mix13 output.
class SplitMix64 {
  public:
    using result_type = uint64_t;

    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~0ULL; }

    uint64_t operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix13(state_);
    }

    // uniform in [0,1)
    double next_double() { return double((*this)() >> 11) * 0x1.0p-53; }

    // uniform in (0,1], safe as a log() argument
    double next_double_pos() { return double(((*this)() >> 11) + 1) * 0x1.0p-53; }

    // uniform integer in [0, bound) via Lemire's multiply-shift rejection
    uint64_t next_below(uint64_t bound) {
        uint64_t x = (*this)();
        __uint128_t m = (__uint128_t)x * bound;
        uint64_t lo = (uint64_t)m;
        if (lo < bound) {
            uint64_t thresh = -bound % bound;
            while (lo < thresh) {
                x = (*this)();
                m = (__uint128_t)x * bound;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // number of failures before the first success in Bernoulli(p) trials;
    // used for geometric skipping over long candidate sequences
    uint64_t next_geometric_skip(double p) {
        if (p >= 1.0) return 0;
        double u = next_double_pos();
        double s = std::floor(std::log(u) / std::log1p(-p));
        if (s >= 9.2e18) return UINT64_MAX;
        return (uint64_t)s;
    }

  private:
    uint64_t state_;
};

}  // namespace twosat
