#include "ddns/chain/node.hpp"

namespace ddns::chain {

SubmitResult Node::submit_block(const Block& block, std::optional<std::uint64_t> now) {
    auto r = chain_.submit_block(block, now);
    if (!r.tip_changed) return r;
    if (!r.returned.empty()) {
        mempool_.return_transactions(r.returned, chain_.state(), chain_.params());
    }
    for (const auto& b : r.connected)
        for (const auto& tx : b.transactions) mempool_.remove(tx.txid());
    mempool_.revalidate(chain_.state(), chain_.params());
    return r;
}

}  // namespace ddns::chain
