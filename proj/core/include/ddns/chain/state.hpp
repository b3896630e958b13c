#pragma once

#include "ddns/chain/block.hpp"
#include "ddns/chain/params.hpp"
#include "ddns/registry/types.hpp"

#include <deque>
#include <filesystem>
#include <map>
#include <optional>

namespace ddns::chain {

struct UtxoEntry {
    TxOutput output;
    std::uint64_t height = 0;
    bool coinbase = false;
    bool operator==(const UtxoEntry&) const = default;
};

/// What connect() needs to revert a block.
struct BlockUndo {
    std::vector<std::pair<OutPoint, UtxoEntry>> spent;
    std::vector<OutPoint> created;
    std::vector<std::pair<std::string, std::optional<registry::DomainAsset>>> assets_before;
    std::deque<BlockHeader> headers_before;
    Hash256 tip_before;
    std::uint64_t height_before = 0;
    std::int64_t fees_burned = 0;
    std::int64_t subsidy = 0;
};

class ChainState {
public:
    std::map<OutPoint, UtxoEntry> utxo;
    std::map<std::string, registry::DomainAsset> assets;
    Hash256 tip;
    std::uint64_t height = 0;
    std::deque<BlockHeader> recent_headers;
    std::int64_t total_subsidy = 0;
    std::int64_t total_fees_burned = 0;

    bool operator==(const ChainState&) const = default;

    const UtxoEntry* find_utxo(const OutPoint& p) const;
    const registry::DomainAsset* find_asset(std::string_view name) const;
    std::int64_t utxo_value_sum() const;

    std::vector<BlockHeader> header_window() const { return {recent_headers.begin(), recent_headers.end()}; }

    Bytes serialize() const;
    static ChainState deserialize(ByteView bytes);
    /// SHA-256 of serialize(); equal states give equal digests.
    Hash256 digest() const;

    void save_snapshot(const std::filesystem::path& path) const;
    static ChainState load_snapshot(const std::filesystem::path& path);
};

/// State holding only the genesis block.
ChainState genesis_state(const Block& genesis, const ChainParams& params);

/// Applies an already-validated block in place and returns its undo record.
BlockUndo connect_block(ChainState& state, const Block& block, const ChainParams& params);
void disconnect_block(ChainState& state, const Block& block, const BlockUndo& undo);

/// Pure form: validates, then returns the successor state. Throws
/// BlockRejected when validation fails.
ChainState apply_block(const ChainState& state, const Block& block, const ChainParams& params,
                       std::optional<std::uint64_t> now = std::nullopt);

/// Applies one transaction's effects (used by the miner and mempool to
/// build running views). The transaction must already be valid against `state`.
void apply_transaction(ChainState& state, const Transaction& tx, std::uint64_t height, BlockUndo* undo,
                       const ChainParams& params);

}  // namespace ddns::chain
