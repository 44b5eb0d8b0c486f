#pragma once

#include <cstdint>

namespace gibbs {

// Counter-based generator: the n-th output of stream (seed, stream) is a
// stateless hash of (seed, stream, n), so parallel chains reproduce
// bit-identically regardless of scheduling or platform.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ golden(stream))) {}

    std::uint64_t next_u64() { return mix(key_ ^ golden(counter_++)); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // uniform in [0, n)
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    // spin +1/-1 with equal probability
    int coin() { return (next_u64() & 1u) ? 1 : -1; }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // stable derived seeds for sub-streams
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        return mix(seed ^ golden(tag));
    }

private:
    static std::uint64_t golden(std::uint64_t n) { return n * 0x9e3779b97f4a7c15ULL; }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace gibbs
