#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ppmarket/bytes.hpp"

namespace ppmarket {

/// Deterministic byte-exact RNG: SHA-256 in counter mode over a seed.
/// Used wherever replay must reproduce draws bit-for-bit across platforms
/// (dataset splitting, round selection, scenario generation).
class DetRng {
public:
    explicit DetRng(Bytes seed);
    DetRng(const Bytes& seed, std::string_view domain);
    DetRng(std::string_view seed, std::string_view domain);

    uint64_t next_u64();

    /// Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    uint64_t uniform(uint64_t bound);

    /// Uniform double in [0, 1).
    double unit();

    /// Uniform double in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Bytes bytes(size_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (size_t i = v.size() - 1; i > 0; --i) {
            size_t j = static_cast<size_t>(uniform(i + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    void refill();

    Bytes seed_;
    uint64_t counter_ = 0;
    uint8_t block_[32];
    size_t pos_ = 32;  // forces refill on first draw
};

/// Fast non-cryptographic PRNG for the network simulator. Reproducible per
/// seed; not used on any protocol path.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    uint64_t uniform(uint64_t bound) {
        // Lemire-style bounded draw; bias negligible for simulator use.
        return next() % bound;
    }

private:
    uint64_t state_;
};

}  // namespace ppmarket
