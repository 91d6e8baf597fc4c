#include "ppmarket/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace ppmarket {

Digest32 sha256(const uint8_t* data, size_t len) {
    Digest32 out{};
    unsigned int n = 0;
    if (EVP_Digest(data, len, out.data(), &n, EVP_sha256(), nullptr) != 1 || n != 32)
        throw std::runtime_error("sha256: digest failed");
    return out;
}

}  // namespace ppmarket
