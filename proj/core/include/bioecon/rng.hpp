#pragma once

#include <cstdint>

namespace bioecon {

// Counter-based deterministic random stream.
//
// Output n of stream (seed, stream_id) is
//     mix(mix(seed) ^ mix(stream_id * PHI) + n * PHI)
// where PHI = 0x9E3779B97F4A7C15 (the 64-bit golden ratio) and mix is the
// SplitMix64 finalizer (Stafford variant 13): xor-shift 30, multiply
// 0xBF58476D1CE4E5B9, xor-shift 27, multiply 0x94D049BB133111EB, xor-shift 31.
//
// Because each draw depends only on (seed, stream_id, counter), replicate
// streams are independent of execution order and thread count, and a stream
// can be reconstructed at any position.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id)
        : key_(mix(seed) ^ mix(stream_id * kPhi)), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kPhi); }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace bioecon
