#pragma once

#include "ddns/common/bytes.hpp"

#include <array>

namespace ddns::crypto {

using Hash160 = std::array<std::uint8_t, 20>;

Hash256 sha256(ByteView data);
Hash256 double_sha256(ByteView data);
Hash160 ripemd160(ByteView data);
/// RIPEMD160(SHA256(data)), the address payload hash.
Hash160 hash160(ByteView data);
Hash256 hmac_sha256(ByteView key, ByteView data);

}  // namespace ddns::crypto
