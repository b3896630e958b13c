#pragma once

#include "ddns/chain/blockchain.hpp"
#include "ddns/chain/mempool.hpp"
#include "ddns/chain/miner.hpp"

namespace ddns::chain {

/// Chain plus mempool kept consistent across tip changes: confirmed
/// transactions leave the pool, transactions from orphaned blocks return.
class Node {
public:
    explicit Node(ChainParams params) : chain_(std::move(params)) {}
    Node(ChainParams params, const std::filesystem::path& block_file) : chain_(std::move(params), block_file) {}

    ValidationReport submit_transaction(const Transaction& tx) { return mempool_.add(tx, chain_.state(), chain_.params()); }
    SubmitResult submit_block(const Block& block, std::optional<std::uint64_t> now);

    /// Template on the current tip with a bounded nonce search.
    std::optional<Block> mine(const crypto::Address& to, std::uint64_t now, std::uint64_t max_attempts = 1ull << 32) const {
        return mine_block(mempool_, chain_.state(), to, now, chain_.params(), max_attempts);
    }

    const Blockchain& chain() const { return chain_; }
    const ChainState& state() const { return chain_.state(); }
    const Mempool& mempool() const { return mempool_; }
    Mempool& mempool() { return mempool_; }
    const ChainParams& params() const { return chain_.params(); }

private:
    Blockchain chain_;
    Mempool mempool_;
};

}  // namespace ddns::chain
