#pragma once

#include "ddns/common/bytes.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>

namespace ddns::crypto {

class CryptoError : public std::runtime_error {
public:
    enum class Code { invalid_seed, invalid_key, invalid_signature };

    CryptoError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

/// Secret scalar in [1, n-1], big-endian.
struct SecretKey {
    std::array<std::uint8_t, 32> bytes{};
    bool operator==(const SecretKey&) const = default;
};

/// Compressed SEC1 encoding (0x02/0x03 prefix followed by the x coordinate).
struct PublicKey {
    std::array<std::uint8_t, 33> bytes{};

    /// Accepts only a 33-byte compressed encoding of a point on the curve.
    static PublicKey parse(ByteView encoded);
    ByteView view() const { return bytes; }

    auto operator<=>(const PublicKey&) const = default;
};

/// ECDSA signature (r, s), both big-endian. Produced signatures are always
/// low-s; `parse` rejects anything non-canonical.
struct Signature {
    std::array<std::uint8_t, 32> r{};
    std::array<std::uint8_t, 32> s{};

    static constexpr std::size_t size = 64;

    std::array<std::uint8_t, 64> serialize() const;
    /// Raw split of 64 bytes into r and s with no range checks.
    static Signature from_bytes(std::span<const std::uint8_t, 64> bytes);
    /// Strict parse: exactly 64 bytes, 0 < r, s < n and s <= n/2.
    static Signature parse(ByteView bytes);
    bool is_canonical() const;

    bool operator==(const Signature&) const = default;
};

struct KeyPair {
    SecretKey secret_key;
    PublicKey public_key;
};

/// Seeded generation reduces the seed modulo the curve order; a seed that
/// reduces to zero throws CryptoError::invalid_seed. Unseeded generation
/// draws from the system CSPRNG.
KeyPair generate_keypair(std::optional<std::span<const std::uint8_t, 32>> seed = std::nullopt);

/// Throws CryptoError::invalid_key unless 0 < secret < n.
KeyPair keypair_from_secret(const SecretKey& secret);

PublicKey derive_public_key(const SecretKey& secret);

/// Deterministic-nonce (RFC 6979, HMAC-SHA256) ECDSA over SHA-256(message).
Signature sign(const SecretKey& secret, ByteView message);
Signature sign_digest(const SecretKey& secret, const Hash256& digest);

bool verify(const PublicKey& key, ByteView message, const Signature& sig);
bool verify_digest(const PublicKey& key, const Hash256& digest, const Signature& sig);

/// Byte-level verification used on untrusted transaction data. A malformed
/// public key throws CryptoError::invalid_key; a malformed signature is
/// simply not valid.
bool verify(ByteView public_key, ByteView message, ByteView signature);

}  // namespace ddns::crypto
