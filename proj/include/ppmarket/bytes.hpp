#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppmarket {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(const Bytes& b) {
    return std::string(b.begin(), b.end());
}

inline void append(Bytes& out, std::string_view s) {
    out.insert(out.end(), s.begin(), s.end());
}

inline void append(Bytes& out, const Bytes& b) {
    out.insert(out.end(), b.begin(), b.end());
}

std::string hex_encode(const uint8_t* data, size_t len);

inline std::string hex_encode(const Bytes& b) {
    return hex_encode(b.data(), b.size());
}

/// Throws std::invalid_argument on odd length or non-hex characters.
Bytes hex_decode(std::string_view hex);

bool is_hex(std::string_view s);

}  // namespace ppmarket
