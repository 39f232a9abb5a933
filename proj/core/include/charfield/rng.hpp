#pragma once

#include <cstdint>
#include <random>

namespace charfield {

// Deterministic random source for seeded scenarios. mt19937_64 output is
// fully specified by the standard and the uniform draws below avoid
// std::uniform_int_distribution (whose mapping is implementation-defined),
// so identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, n), unbiased by rejection.
    std::uint64_t below(std::uint64_t n);

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi);

    bool coin() { return (next() & 1u) != 0; }

    // Per-trial generator: trial i of a run with master seed s draws from
    // Rng::derive(s, i). The derivation is a splitmix64 finalizer over
    // (seed, index), so trials are independent and reorderable.
    static Rng derive(std::uint64_t master_seed, std::uint64_t index);

private:
    std::mt19937_64 gen_;
};

} // namespace charfield
