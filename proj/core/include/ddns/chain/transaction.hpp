#pragma once

#include "ddns/common/bytes.hpp"
#include "ddns/common/serialize.hpp"
#include "ddns/crypto/address.hpp"
#include "ddns/crypto/secp256k1.hpp"
#include "ddns/registry/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ddns::chain {

using registry::OutPoint;

struct TxInput {
    OutPoint prevout;
    crypto::Signature signature;
    Bytes public_key;
    bool operator==(const TxInput&) const = default;
};

struct CarriedAsset {
    std::string name;
    std::uint64_t quantity = 1;
    std::string content_id;
    bool operator==(const CarriedAsset&) const = default;
};

struct TxOutput {
    std::int64_t value = 0;
    crypto::Address recipient;
    std::optional<CarriedAsset> asset;
    bool operator==(const TxOutput&) const = default;

    void write(Writer& w) const;
    static TxOutput read(Reader& r);
};

inline constexpr std::uint32_t kTxVersion = 1;

struct Transaction {
    std::vector<TxInput> inputs;
    std::vector<TxOutput> outputs;
    std::optional<registry::AssetOperation> asset_op;
    std::uint64_t nonce = 0;

    bool operator==(const Transaction&) const = default;

    Bytes serialize() const;
    static Transaction deserialize(ByteView bytes);
    static Transaction read(Reader& r);
    void write(Writer& w, bool blank_signatures = false) const;

    Hash256 txid() const;
    /// Bytes signed by every input: the serialization with all input and
    /// authorization signatures zeroed.
    Bytes signing_preimage() const;
    std::uint64_t weight() const;
    bool is_coinbase() const { return inputs.empty() && !asset_op; }
};

inline constexpr std::uint64_t weight_for_bytes(std::uint64_t n) { return n * 4; }

std::uint64_t tx_weight(const Transaction& tx);

/// Fills every input signature with `key`, which must own all the inputs.
void sign_all_inputs(Transaction& tx, const crypto::KeyPair& key);

}  // namespace ddns::chain
