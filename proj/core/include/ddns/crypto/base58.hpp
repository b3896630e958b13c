#pragma once

#include "ddns/common/bytes.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ddns::crypto {

/// Bitcoin alphabet; leading zero bytes become leading '1' characters.
std::string base58_encode(ByteView data);
std::optional<Bytes> base58_decode(std::string_view text);

/// payload || first four bytes of SHA256d(payload)
std::string base58check_encode(ByteView payload);
/// Returns nullopt on bad characters, short input or checksum mismatch.
std::optional<Bytes> base58check_decode(std::string_view text);

}  // namespace ddns::crypto
