#include "ddns/chain/mempool.hpp"

#include <algorithm>

namespace ddns::chain {

bool higher_fee_rate(std::int64_t fee_a, std::uint64_t weight_a, std::int64_t fee_b, std::uint64_t weight_b) {
    using i128 = __int128;
    return static_cast<i128>(fee_a) * static_cast<i128>(weight_b) > static_cast<i128>(fee_b) * static_cast<i128>(weight_a);
}

ValidationReport Mempool::add(const Transaction& tx, const ChainState& state, const ChainParams& params) {
    auto id = tx.txid();
    if (entries_.count(id)) return ValidationReport::fail(ValidationCode::duplicate, "already in mempool");
    for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
        if (spends_.count(tx.inputs[i].prevout)) {
            auto r = ValidationReport::fail(ValidationCode::mempool_conflict, "input already spent by a pending transaction");
            r.input_index = i;
            return r;
        }
    }
    if (tx.asset_op && names_.count(tx.asset_op->asset_name))
        return ValidationReport::fail(ValidationCode::mempool_conflict, "operation on this name already pending");
    std::int64_t fee = 0;
    auto r = validate_transaction(tx, state, params, &fee);
    if (!r.ok()) return r;

    MempoolEntry e{tx, id, fee, tx.weight(), next_arrival_++};
    for (const auto& in : tx.inputs) spends_[in.prevout] = id;
    if (tx.asset_op) names_[tx.asset_op->asset_name] = id;
    entries_.emplace(id, std::move(e));
    return {};
}

const MempoolEntry* Mempool::find(const Hash256& txid) const {
    auto it = entries_.find(txid);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const MempoolEntry*> Mempool::ordered() const {
    std::vector<const MempoolEntry*> out;
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(&e);
    std::sort(out.begin(), out.end(), [](const MempoolEntry* a, const MempoolEntry* b) {
        if (higher_fee_rate(a->fee, a->weight, b->fee, b->weight)) return true;
        if (higher_fee_rate(b->fee, b->weight, a->fee, a->weight)) return false;
        return a->arrival < b->arrival;
    });
    return out;
}

void Mempool::erase(std::unordered_map<Hash256, MempoolEntry, Hash256Hasher>::iterator it) {
    for (const auto& in : it->second.tx.inputs) spends_.erase(in.prevout);
    if (it->second.tx.asset_op) names_.erase(it->second.tx.asset_op->asset_name);
    entries_.erase(it);
}

void Mempool::remove(const Hash256& txid) {
    auto it = entries_.find(txid);
    if (it != entries_.end()) erase(it);
}

void Mempool::remove_confirmed(const Block& block, const ChainState& state, const ChainParams& params) {
    for (const auto& tx : block.transactions) remove(tx.txid());
    revalidate(state, params);
}

void Mempool::return_transactions(const std::vector<Transaction>& txs, const ChainState& state, const ChainParams& params) {
    // Returned transactions predate anything currently pending.
    std::vector<MempoolEntry> pending;
    for (auto& [_, e] : entries_) pending.push_back(std::move(e));
    std::sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) { return a.arrival < b.arrival; });
    clear();
    for (const auto& tx : txs)
        if (!tx.is_coinbase()) add(tx, state, params);
    for (const auto& e : pending) add(e.tx, state, params);
}

void Mempool::revalidate(const ChainState& state, const ChainParams& params) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (validate_transaction(it->second.tx, state, params).ok()) {
            ++it;
        } else {
            auto next = std::next(it);
            erase(it);
            it = next;
        }
    }
}

void Mempool::clear() {
    entries_.clear();
    spends_.clear();
    names_.clear();
}

}  // namespace ddns::chain
