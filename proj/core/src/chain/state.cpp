#include "ddns/chain/state.hpp"

#include "ddns/chain/validation.hpp"
#include "ddns/crypto/hash.hpp"
#include "ddns/registry/rules.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>

namespace ddns::chain {

const UtxoEntry* ChainState::find_utxo(const OutPoint& p) const {
    auto it = utxo.find(p);
    return it == utxo.end() ? nullptr : &it->second;
}

const registry::DomainAsset* ChainState::find_asset(std::string_view name) const {
    auto it = assets.find(std::string(name));
    return it == assets.end() ? nullptr : &it->second;
}

std::int64_t ChainState::utxo_value_sum() const {
    std::int64_t s = 0;
    for (const auto& [_, e] : utxo) s += e.output.value;
    return s;
}

namespace {
constexpr std::uint32_t kSnapshotMagic = 0x54534444;  // "DDST"
constexpr std::uint32_t kSnapshotVersion = 1;
}  // namespace

Bytes ChainState::serialize() const {
    Writer w;
    w.hash(tip);
    w.u64(height);
    w.i64(total_subsidy);
    w.i64(total_fees_burned);
    w.u32(static_cast<std::uint32_t>(recent_headers.size()));
    for (const auto& h : recent_headers) h.write(w);
    w.u32(static_cast<std::uint32_t>(utxo.size()));
    for (const auto& [p, e] : utxo) {
        w.hash(p.txid);
        w.u32(p.index);
        e.output.write(w);
        w.u64(e.height);
        w.u8(e.coinbase);
    }
    w.u32(static_cast<std::uint32_t>(assets.size()));
    for (const auto& [name, a] : assets) a.write(w);
    return std::move(w).take();
}

ChainState ChainState::deserialize(ByteView bytes) {
    Reader r(bytes);
    ChainState s;
    s.tip = r.hash();
    s.height = r.u64();
    s.total_subsidy = r.i64();
    s.total_fees_burned = r.i64();
    auto nh = r.u32();
    if (nh > 1024) throw DecodeError("header window too large");
    for (std::uint32_t i = 0; i < nh; ++i) s.recent_headers.push_back(BlockHeader::read(r));
    auto nu = r.u32();
    for (std::uint32_t i = 0; i < nu; ++i) {
        OutPoint p;
        p.txid = r.hash();
        p.index = r.u32();
        UtxoEntry e;
        e.output = TxOutput::read(r);
        e.height = r.u64();
        e.coinbase = r.flag();
        s.utxo.emplace(p, std::move(e));
    }
    auto na = r.u32();
    for (std::uint32_t i = 0; i < na; ++i) {
        auto a = registry::DomainAsset::read(r);
        auto name = a.asset_name;
        s.assets.emplace(std::move(name), std::move(a));
    }
    if (!r.empty()) throw DecodeError("trailing bytes after state");
    return s;
}

Hash256 ChainState::digest() const { return crypto::sha256(serialize()); }

void ChainState::save_snapshot(const std::filesystem::path& path) const {
    Writer w;
    w.u32(kSnapshotMagic);
    w.u32(kSnapshotVersion);
    w.bytes(serialize());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(w.data().data()), static_cast<std::streamsize>(w.data().size()));
        if (!out) throw std::runtime_error("cannot write snapshot " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ChainState ChainState::load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read snapshot " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r(data);
    if (r.u32() != kSnapshotMagic) throw DecodeError("not a state snapshot");
    if (r.u32() != kSnapshotVersion) throw DecodeError("unsupported snapshot version");
    return deserialize(r.bytes(1u << 30));
}

ChainState genesis_state(const Block& genesis, const ChainParams&) {
    ChainState s;
    s.tip = genesis.hash();
    s.height = genesis.header.height;
    s.recent_headers.push_back(genesis.header);
    return s;
}

void apply_transaction(ChainState& state, const Transaction& tx, std::uint64_t height, BlockUndo* undo,
                       const ChainParams& params) {
    auto txid = tx.txid();
    std::int64_t in_sum = 0, out_sum = 0;
    for (const auto& in : tx.inputs) {
        auto it = state.utxo.find(in.prevout);
        if (it == state.utxo.end()) continue;
        in_sum += it->second.output.value;
        if (undo) undo->spent.emplace_back(it->first, it->second);
        state.utxo.erase(it);
    }
    for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) {
        out_sum += tx.outputs[i].value;
        OutPoint p{txid, i};
        state.utxo[p] = UtxoEntry{tx.outputs[i], height, tx.is_coinbase()};
        if (undo) undo->created.push_back(p);
    }
    if (tx.is_coinbase()) {
        state.total_subsidy += out_sum;
        if (undo) undo->subsidy += out_sum;
        return;
    }
    state.total_fees_burned += in_sum - out_sum;
    if (undo) undo->fees_burned += in_sum - out_sum;

    if (tx.asset_op) {
        const auto& op = *tx.asset_op;
        auto it = state.assets.find(op.asset_name);
        std::optional<registry::DomainAsset> before;
        if (it != state.assets.end()) before = it->second;
        if (undo) undo->assets_before.emplace_back(op.asset_name, before);
        if (op.previous) {
            auto rit = state.utxo.find(*op.previous);
            if (rit != state.utxo.end()) {
                if (undo) undo->spent.emplace_back(rit->first, rit->second);
                state.utxo.erase(rit);
            }
        }
        auto ridx = registry::receipt_index(tx);
        OutPoint receipt{txid, ridx.value_or(0)};
        state.assets[op.asset_name] = registry::resulting_asset(op, before ? &*before : nullptr, receipt, height);
    }
    (void)params;
}

BlockUndo connect_block(ChainState& state, const Block& block, const ChainParams& params) {
    BlockUndo undo;
    undo.headers_before = state.recent_headers;
    undo.tip_before = state.tip;
    undo.height_before = state.height;
    for (const auto& tx : block.transactions) apply_transaction(state, tx, block.header.height, &undo, params);
    state.tip = block.hash();
    state.height = block.header.height;
    state.recent_headers.push_back(block.header);
    while (state.recent_headers.size() > params.difficulty_window) state.recent_headers.pop_front();
    return undo;
}

void disconnect_block(ChainState& state, const Block&, const BlockUndo& undo) {
    for (auto it = undo.assets_before.rbegin(); it != undo.assets_before.rend(); ++it) {
        if (it->second)
            state.assets[it->first] = *it->second;
        else
            state.assets.erase(it->first);
    }
    std::set<OutPoint> created(undo.created.begin(), undo.created.end());
    for (const auto& p : created) state.utxo.erase(p);
    // Outputs both created and spent inside the block did not exist before it.
    for (const auto& [p, e] : undo.spent)
        if (!created.count(p)) state.utxo[p] = e;
    state.total_subsidy -= undo.subsidy;
    state.total_fees_burned -= undo.fees_burned;
    state.recent_headers = undo.headers_before;
    state.tip = undo.tip_before;
    state.height = undo.height_before;
}

ChainState apply_block(const ChainState& state, const Block& block, const ChainParams& params,
                       std::optional<std::uint64_t> now) {
    ChainState next = state;
    auto r = check_and_connect(next, block, params, now, nullptr);
    if (!r.ok()) throw BlockRejected(r);
    return next;
}

}  // namespace ddns::chain
