#include "ddns/chain/miner.hpp"

#include "ddns/chain/difficulty.hpp"
#include "ddns/chain/validation.hpp"

#include <algorithm>

namespace ddns::chain {

Block build_template(const ChainState& state, const Mempool& mempool, const crypto::Address& coinbase_to,
                     std::uint64_t now, const ChainParams& params) {
    Block b;
    b.header.previous_hash = state.tip;
    b.header.height = state.height + 1;
    auto window = state.header_window();
    b.header.target = adjust_difficulty(window, params);
    b.header.timestamp = std::max<std::uint64_t>(now, median_time_past(window, params) + 1);

    b.transactions.push_back(make_coinbase(coinbase_to, b.header.height, params));
    std::uint64_t weight = b.transactions.front().weight();

    ChainState scratch = state;
    for (const auto* e : mempool.ordered()) {
        if (weight + e->weight > params.max_block_weight) continue;
        if (!validate_transaction(e->tx, scratch, params).ok()) continue;
        apply_transaction(scratch, e->tx, b.header.height, nullptr, params);
        b.transactions.push_back(e->tx);
        weight += e->weight;
    }
    b.header.merkle_root = merkle_root(b.transactions);
    return b;
}

bool mine_step(MiningJob& job, std::uint64_t max_attempts) {
    if (job.found) return true;
    for (std::uint64_t i = 0; i < max_attempts; ++i) {
        job.block.header.nonce = job.next_nonce++;
        ++job.hashes;
        if (job.block.header.meets_target()) {
            job.found = true;
            return true;
        }
    }
    return false;
}

std::optional<Block> mine_block(const Mempool& mempool, const ChainState& state, const crypto::Address& coinbase_to,
                                std::uint64_t now, const ChainParams& params, std::uint64_t max_attempts) {
    MiningJob job{build_template(state, mempool, coinbase_to, now, params)};
    if (!mine_step(job, max_attempts)) return std::nullopt;
    return job.block;
}

}  // namespace ddns::chain
