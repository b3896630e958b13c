#pragma once

#include "ddns/crypto/hash.hpp"
#include "ddns/crypto/secp256k1.hpp"

#include <optional>
#include <span>
#include <string>

namespace ddns::crypto {

inline constexpr std::uint8_t kAddressVersion = 0x37;
/// Owner slot holding the commitment to a 2-of-3 key policy.
inline constexpr std::uint8_t kPolicyAddressVersion = 0x38;

struct Address {
    std::uint8_t version = kAddressVersion;
    Hash160 payload{};

    std::string encode() const;
    /// nullopt on checksum mismatch, wrong length or unknown version byte.
    static std::optional<Address> decode(std::string_view text);

    bool is_policy() const { return version == kPolicyAddressVersion; }

    auto operator<=>(const Address&) const = default;
};

Address derive_address(const PublicKey& pk);

/// hash160 over the three compressed keys in ascending byte order.
Address policy_address(std::span<const PublicKey, 3> keys);

}  // namespace ddns::crypto
