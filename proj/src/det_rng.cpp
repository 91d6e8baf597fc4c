#include "ppmarket/det_rng.hpp"

#include <cstring>
#include <stdexcept>

#include "ppmarket/sha256.hpp"

namespace ppmarket {

DetRng::DetRng(Bytes seed) : seed_(std::move(seed)) {}

DetRng::DetRng(const Bytes& seed, std::string_view domain) : seed_(seed) {
    seed_.push_back('/');
    append(seed_, domain);
}

DetRng::DetRng(std::string_view seed, std::string_view domain) : seed_(to_bytes(seed)) {
    seed_.push_back('/');
    append(seed_, domain);
}

void DetRng::refill() {
    Bytes input = seed_;
    for (int i = 7; i >= 0; --i)
        input.push_back(static_cast<uint8_t>((counter_ >> (8 * i)) & 0xff));
    auto d = sha256(input);
    std::memcpy(block_, d.data(), 32);
    ++counter_;
    pos_ = 0;
}

uint64_t DetRng::next_u64() {
    if (pos_ + 8 > 32) refill();
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | block_[pos_ + static_cast<size_t>(i)];
    pos_ += 8;
    return v;
}

uint64_t DetRng::uniform(uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("DetRng::uniform: zero bound");
    // Reject draws from the final partial interval.
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

double DetRng::unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Bytes DetRng::bytes(size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
        if (pos_ >= 32) refill();
        out.push_back(block_[pos_++]);
    }
    return out;
}

}  // namespace ppmarket
