#include "ddns/chain/block.hpp"

#include "ddns/crypto/hash.hpp"

#include <cstring>

namespace ddns::chain {

void BlockHeader::write(Writer& w) const {
    w.hash(previous_hash);
    w.hash(merkle_root);
    w.u64(timestamp);
    w.raw(target.to_be());
    w.u64(nonce);
    w.u64(height);
}

BlockHeader BlockHeader::read(Reader& r) {
    BlockHeader h;
    h.previous_hash = r.hash();
    h.merkle_root = r.hash();
    h.timestamp = r.u64();
    h.target = crypto::U256::from_be(std::span<const std::uint8_t, 32>(r.raw(32).data(), 32));
    h.nonce = r.u64();
    h.height = r.u64();
    return h;
}

std::array<std::uint8_t, BlockHeader::kSize> BlockHeader::serialize() const {
    Writer w;
    write(w);
    std::array<std::uint8_t, kSize> out{};
    std::memcpy(out.data(), w.data().data(), kSize);
    return out;
}

Hash256 BlockHeader::hash() const { return crypto::double_sha256(serialize()); }

bool BlockHeader::meets_target() const {
    auto h = hash();
    return crypto::U256::from_be(std::span<const std::uint8_t, 32>(h.data)) <= target;
}

Bytes Block::serialize() const {
    Writer w;
    header.write(w);
    w.u32(static_cast<std::uint32_t>(transactions.size()));
    for (const auto& tx : transactions) tx.write(w);
    return std::move(w).take();
}

Block Block::deserialize(ByteView bytes) {
    Reader r(bytes);
    Block b;
    b.header = BlockHeader::read(r);
    auto n = r.u32();
    if (n > r.remaining() / 20) throw DecodeError("transaction count exceeds payload");
    b.transactions.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) b.transactions.push_back(Transaction::read(r));
    if (!r.empty()) throw DecodeError("trailing bytes after block");
    return b;
}

std::uint64_t Block::weight() const {
    std::uint64_t w = 0;
    for (const auto& tx : transactions) w += tx.weight();
    return w;
}

Hash256 merkle_root(const std::vector<Hash256>& leaves) {
    if (leaves.empty()) return {};
    std::vector<Hash256> level = leaves;
    while (level.size() > 1) {
        if (level.size() % 2) level.push_back(level.back());
        std::vector<Hash256> next;
        next.reserve(level.size() / 2);
        for (std::size_t i = 0; i < level.size(); i += 2) {
            std::array<std::uint8_t, 64> buf{};
            std::memcpy(buf.data(), level[i].data.data(), 32);
            std::memcpy(buf.data() + 32, level[i + 1].data.data(), 32);
            next.push_back(crypto::double_sha256(buf));
        }
        level = std::move(next);
    }
    return level.front();
}

Hash256 merkle_root(const std::vector<Transaction>& txs) {
    std::vector<Hash256> ids;
    ids.reserve(txs.size());
    for (const auto& tx : txs) ids.push_back(tx.txid());
    return merkle_root(ids);
}

}  // namespace ddns::chain
