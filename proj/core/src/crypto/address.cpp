#include "ddns/crypto/address.hpp"

#include "ddns/crypto/base58.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace ddns::crypto {

std::string Address::encode() const {
    std::array<std::uint8_t, 21> buf{};
    buf[0] = version;
    std::memcpy(buf.data() + 1, payload.data(), payload.size());
    return base58check_encode(buf);
}

std::optional<Address> Address::decode(std::string_view text) {
    auto raw = base58check_decode(text);
    if (!raw || raw->size() != 21) return std::nullopt;
    if ((*raw)[0] != kAddressVersion && (*raw)[0] != kPolicyAddressVersion) return std::nullopt;
    Address a;
    a.version = (*raw)[0];
    std::memcpy(a.payload.data(), raw->data() + 1, 20);
    return a;
}

Address derive_address(const PublicKey& pk) {
    Address a;
    a.payload = hash160(pk.bytes);
    return a;
}

Address policy_address(std::span<const PublicKey, 3> keys) {
    std::array<PublicKey, 3> sorted{keys[0], keys[1], keys[2]};
    std::sort(sorted.begin(), sorted.end());
    Bytes buf;
    for (const auto& k : sorted) buf.insert(buf.end(), k.bytes.begin(), k.bytes.end());
    Address a;
    a.version = kPolicyAddressVersion;
    a.payload = hash160(buf);
    return a;
}

}  // namespace ddns::crypto
