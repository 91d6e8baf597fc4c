#include "ppmarket/bytes.hpp"

namespace ppmarket {

static constexpr char kHexDigits[] = "0123456789abcdef";

std::string hex_encode(const uint8_t* data, size_t len) {
    std::string out;
    out.resize(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out[2 * i] = kHexDigits[data[i] >> 4];
        out[2 * i + 1] = kHexDigits[data[i] & 0x0f];
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes hex_decode(std::string_view hex) {
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("hex_decode: odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("hex_decode: non-hex character");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

bool is_hex(std::string_view s) {
    if (s.size() % 2 != 0) return false;
    for (char c : s)
        if (hex_nibble(c) < 0) return false;
    return true;
}

}  // namespace ppmarket
