#ifndef CUSP_TEST_UTIL_HPP
#define CUSP_TEST_UTIL_HPP

#include <cstdint>

#include "cusp/cyclotomic.hpp"

// Small deterministic RNG for property tests (xorshift64*).
struct TestRng {
    uint64_t state;
    explicit TestRng(uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed) {}
    uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 2685821657736338717ull;
    }
    long long range(long long lo, long long hi) {   // inclusive
        return lo + (long long)(next() % (uint64_t)(hi - lo + 1));
    }
};

inline cusp::CycloScalar random_scalar(TestRng &rng, const cusp::CycloFieldPtr &f) {
    std::vector<cusp::Rational> c(f->degree());
    for (auto &x : c) x = cusp::Rational(rng.range(-4, 4), rng.range(1, 3));
    return cusp::CycloScalar(f, c);
}

#endif
