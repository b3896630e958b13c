#pragma once

#include "ddns/chain/transaction.hpp"
#include "ddns/crypto/uint256.hpp"

#include <vector>

namespace ddns::chain {

struct BlockHeader {
    Hash256 previous_hash;
    Hash256 merkle_root;
    std::uint64_t timestamp = 0;
    crypto::U256 target;
    std::uint64_t nonce = 0;
    std::uint64_t height = 0;

    static constexpr std::size_t kSize = 120;

    bool operator==(const BlockHeader&) const = default;

    void write(Writer& w) const;
    static BlockHeader read(Reader& r);
    std::array<std::uint8_t, kSize> serialize() const;
    /// SHA256d of the 120 header bytes.
    Hash256 hash() const;
    /// Hash read as a big-endian integer is at most the target.
    bool meets_target() const;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> transactions;

    bool operator==(const Block&) const = default;

    Hash256 hash() const { return header.hash(); }
    Bytes serialize() const;
    static Block deserialize(ByteView bytes);
    /// Sum of transaction weights.
    std::uint64_t weight() const;
};

/// Pairwise SHA256d tree with the last node duplicated on odd levels; the
/// root of a single transaction is its id, of none the zero hash.
Hash256 merkle_root(const std::vector<Hash256>& leaves);
Hash256 merkle_root(const std::vector<Transaction>& txs);

}  // namespace ddns::chain
