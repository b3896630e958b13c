#pragma once

#include "ddns/chain/block.hpp"
#include "ddns/chain/mempool.hpp"
#include "ddns/chain/state.hpp"

#include <optional>

namespace ddns::chain {

/// Candidate block plus the next nonce to try. Searching is resumable: call
/// mine_step repeatedly with a bounded budget.
struct MiningJob {
    Block block;
    std::uint64_t next_nonce = 0;
    std::uint64_t hashes = 0;
    bool found = false;
};

/// Coinbase first, then mempool transactions in fee-rate order; a
/// transaction that does not fit the remaining weight or is not valid on
/// top of the ones already chosen is skipped.
Block build_template(const ChainState& state, const Mempool& mempool, const crypto::Address& coinbase_to,
                     std::uint64_t now, const ChainParams& params);

/// Tries up to `max_attempts` nonces; true once the header meets its target.
bool mine_step(MiningJob& job, std::uint64_t max_attempts);

/// Template plus a bounded search. nullopt means "not found yet".
std::optional<Block> mine_block(const Mempool& mempool, const ChainState& state, const crypto::Address& coinbase_to,
                                std::uint64_t now, const ChainParams& params, std::uint64_t max_attempts = 1ull << 32);

}  // namespace ddns::chain
