#pragma once

#include "ddns/chain/block.hpp"
#include "ddns/chain/params.hpp"
#include "ddns/chain/state.hpp"
#include "ddns/chain/validation.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <unordered_map>

namespace ddns::chain {

struct SubmitResult {
    ValidationReport report;
    /// Stored in the block tree (possibly on a side branch).
    bool stored = false;
    bool tip_changed = false;
    bool reorganized = false;
    /// Blocks removed from / added to the active chain, in application order.
    std::vector<Block> disconnected;
    std::vector<Block> connected;
    /// Non-coinbase transactions from disconnected blocks that the new branch
    /// did not include.
    std::vector<Transaction> returned;
};

/// Block tree with longest-chain selection. Ties at equal height keep the
/// first-seen tip. Side branches are fully validated when they take over.
class Blockchain {
public:
    explicit Blockchain(ChainParams params);
    /// Replays every record of an existing block file, then appends to it.
    Blockchain(ChainParams params, const std::filesystem::path& block_file);

    const ChainParams& params() const { return params_; }
    const ChainState& state() const { return state_; }
    const Block& genesis() const { return genesis_; }
    std::uint64_t height() const { return state_.height; }
    const Hash256& tip() const { return state_.tip; }

    /// `now` enables the future-drift check; nullopt skips it (replay).
    SubmitResult submit_block(const Block& block, std::optional<std::uint64_t> now);

    bool contains(const Hash256& hash) const { return index_.count(hash) != 0; }
    const Block* find_block(const Hash256& hash) const;
    const Block* block_at_height(std::uint64_t height) const;
    std::vector<Hash256> active_chain() const { return active_; }
    std::size_t block_count() const { return index_.size(); }
    std::size_t orphan_count() const;

    /// Up to difficulty_window headers ending at `hash`, oldest first.
    std::vector<BlockHeader> header_window(const Hash256& hash) const;

private:
    struct Entry {
        Block block;
        Hash256 parent;
        std::uint64_t height = 0;
        std::uint64_t seen = 0;
        bool invalid = false;
    };

    SubmitResult accept(const Block& block, std::optional<std::uint64_t> now, bool persist);
    SubmitResult activate(const Hash256& new_tip, std::optional<std::uint64_t> now);
    void mark_invalid(const Hash256& hash);
    void append_record(const Block& block);

    ChainParams params_;
    Block genesis_;
    std::unordered_map<Hash256, Entry, Hash256Hasher> index_;
    std::vector<Hash256> active_;
    std::unordered_map<Hash256, BlockUndo, Hash256Hasher> undo_;
    ChainState state_;
    std::uint64_t seen_counter_ = 0;
    std::unordered_multimap<Hash256, Block, Hash256Hasher> orphans_;
    std::unique_ptr<std::ofstream> file_;
};

/// Length-prefixed block records: "DDBK" magic, u32 length, block bytes.
std::vector<Block> read_block_file(const std::filesystem::path& path);
void append_block_record(std::ostream& out, const Block& block);

}  // namespace ddns::chain
