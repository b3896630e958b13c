#pragma once

#include "ddns/chain/block.hpp"
#include "ddns/chain/state.hpp"
#include "ddns/chain/validation.hpp"

#include <map>
#include <set>
#include <unordered_map>

namespace ddns::chain {

struct MempoolEntry {
    Transaction tx;
    Hash256 txid;
    std::int64_t fee = 0;
    std::uint64_t weight = 0;
    std::uint64_t arrival = 0;
};

/// Pending transactions validated against the tip state. Conflicting spends
/// and a second operation on a name already pending are refused.
class Mempool {
public:
    ValidationReport add(const Transaction& tx, const ChainState& state, const ChainParams& params);

    bool contains(const Hash256& txid) const { return entries_.count(txid) != 0; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const MempoolEntry* find(const Hash256& txid) const;

    /// Highest fee rate first; equal rates by arrival.
    std::vector<const MempoolEntry*> ordered() const;

    void remove(const Hash256& txid);
    /// Drops confirmed transactions, then anything no longer valid.
    void remove_confirmed(const Block& block, const ChainState& state, const ChainParams& params);
    /// Transactions from disconnected blocks come back; then revalidate.
    void return_transactions(const std::vector<Transaction>& txs, const ChainState& state, const ChainParams& params);
    void revalidate(const ChainState& state, const ChainParams& params);
    void clear();

private:
    void erase(std::unordered_map<Hash256, MempoolEntry, Hash256Hasher>::iterator it);

    std::unordered_map<Hash256, MempoolEntry, Hash256Hasher> entries_;
    std::map<OutPoint, Hash256> spends_;
    std::map<std::string, Hash256> names_;
    std::uint64_t next_arrival_ = 0;
};

/// a has a strictly higher fee rate than b.
bool higher_fee_rate(std::int64_t fee_a, std::uint64_t weight_a, std::int64_t fee_b, std::uint64_t weight_b);

}  // namespace ddns::chain
