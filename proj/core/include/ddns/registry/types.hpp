#pragma once

#include "ddns/common/bytes.hpp"
#include "ddns/common/serialize.hpp"
#include "ddns/crypto/address.hpp"
#include "ddns/crypto/secp256k1.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ddns::registry {

enum class AssetReason {
    none,
    name_taken,
    invalid_name,
    insufficient_funds,
    not_owner,
    unknown_domain,
    invalid_address,
    stale_reference,
    bad_fee,
    bad_receipt,
    bad_content_id,
    unbound_transaction,
};

const char* reason_name(AssetReason r);

enum class OpKind : std::uint8_t { register_name = 1, update = 2, transfer = 3 };

const char* kind_name(OpKind k);

struct MultiSigPolicy {
    std::array<crypto::PublicKey, 3> keys;
    std::uint8_t threshold = 2;

    crypto::Address address() const { return crypto::policy_address(keys); }
    bool operator==(const MultiSigPolicy&) const = default;
};

struct Authorization {
    crypto::PublicKey key;
    crypto::Signature signature;
    bool operator==(const Authorization&) const = default;
};

/// Reference to a transaction output; the live receipt of a domain.
struct OutPoint {
    Hash256 txid;
    std::uint32_t index = 0;
    auto operator<=>(const OutPoint&) const = default;
};

struct AssetOperation {
    OpKind kind = OpKind::register_name;
    std::string asset_name;
    std::optional<std::string> new_content_id;
    std::optional<crypto::Address> new_owner;
    std::int64_t fee_paid = 0;
    bool subsidized = false;
    /// Receipt being superseded; required for update and transfer.
    std::optional<OutPoint> previous;
    /// Present when the resulting or current owner is a 2-of-3 policy.
    std::optional<MultiSigPolicy> policy;
    std::vector<Authorization> authorization;

    bool operator==(const AssetOperation&) const = default;

    void write(Writer& w, bool blank_signatures = false) const;
    static AssetOperation read(Reader& r);

    /// Bytes signed by the authorizing keys: the operation without its
    /// authorization list, so holders can sign independently.
    Bytes signing_preimage() const;
    /// Nonce required on a transaction with no inputs: nothing else signs
    /// such a transaction, so its id has to follow from the operation.
    std::uint64_t bound_nonce() const;
};

/// Confirmed ownership record kept in the asset index.
struct DomainAsset {
    std::string asset_name;
    std::uint64_t quantity = 1;
    std::uint32_t units = 1;
    bool reissuable = false;
    bool has_ipfs = false;
    std::optional<std::string> ipfs_hash;
    crypto::Address owner_address;
    bool subsidized = false;
    OutPoint receipt;
    std::uint64_t updated_height = 0;

    bool operator==(const DomainAsset&) const = default;

    void write(Writer& w) const;
    static DomainAsset read(Reader& r);
};

class RegistryError : public std::runtime_error {
public:
    RegistryError(AssetReason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
    AssetReason reason() const { return reason_; }

private:
    AssetReason reason_;
};

}  // namespace ddns::registry
