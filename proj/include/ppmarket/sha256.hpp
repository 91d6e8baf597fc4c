#pragma once

#include <array>
#include <string>
#include <string_view>

#include "ppmarket/bytes.hpp"

namespace ppmarket {

using Digest32 = std::array<uint8_t, 32>;

Digest32 sha256(const uint8_t* data, size_t len);

inline Digest32 sha256(const Bytes& b) {
    return sha256(b.data(), b.size());
}

inline Digest32 sha256(std::string_view s) {
    return sha256(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

inline std::string sha256_hex(const Bytes& b) {
    auto d = sha256(b);
    return hex_encode(d.data(), d.size());
}

inline std::string sha256_hex(std::string_view s) {
    auto d = sha256(s);
    return hex_encode(d.data(), d.size());
}

inline Bytes digest_bytes(const Digest32& d) {
    return Bytes(d.begin(), d.end());
}

inline constexpr std::string_view kZeroDigestHex =
    "0000000000000000000000000000000000000000000000000000000000000000";

}  // namespace ppmarket
