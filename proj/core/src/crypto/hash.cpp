#include "ddns/crypto/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/ripemd.h>
#include <openssl/sha.h>

#include <stdexcept>

namespace ddns::crypto {

Hash256 sha256(ByteView data) {
    Hash256 out;
    SHA256(data.data(), data.size(), out.data.data());
    return out;
}

Hash256 double_sha256(ByteView data) {
    auto first = sha256(data);
    return sha256(first.data);
}

// OpenSSL 3 only exposes RIPEMD-160 through EVP when the legacy provider is
// loaded; the one-shot function is still present in libcrypto.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
Hash160 ripemd160(ByteView data) {
    Hash160 out{};
    RIPEMD160(data.data(), data.size(), out.data());
    return out;
}
#pragma GCC diagnostic pop

Hash160 hash160(ByteView data) {
    auto h = sha256(data);
    return ripemd160(h.data);
}

Hash256 hmac_sha256(ByteView key, ByteView data) {
    Hash256 out;
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
             out.data.data(), &len) == nullptr ||
        len != 32)
        throw std::runtime_error("HMAC-SHA256 failed");
    return out;
}

}  // namespace ddns::crypto
