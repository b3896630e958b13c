#include "ddns/chain/transaction.hpp"

#include "ddns/crypto/hash.hpp"

#include <cstring>

namespace ddns::chain {

void TxOutput::write(Writer& w) const {
    w.i64(value);
    w.u8(recipient.version);
    w.raw(recipient.payload);
    w.u8(asset.has_value());
    if (asset) {
        w.str(asset->name);
        w.u64(asset->quantity);
        w.str(asset->content_id);
    }
}

TxOutput TxOutput::read(Reader& r) {
    TxOutput o;
    o.value = r.i64();
    o.recipient.version = r.u8();
    auto p = r.raw(20);
    std::memcpy(o.recipient.payload.data(), p.data(), 20);
    if (r.flag()) {
        CarriedAsset a;
        a.name = r.str(256);
        a.quantity = r.u64();
        a.content_id = r.str(256);
        o.asset = std::move(a);
    }
    return o;
}

void Transaction::write(Writer& w, bool blank_signatures) const {
    w.u32(kTxVersion);
    w.u32(static_cast<std::uint32_t>(inputs.size()));
    for (const auto& in : inputs) {
        w.hash(in.prevout.txid);
        w.u32(in.prevout.index);
        if (blank_signatures) {
            std::array<std::uint8_t, 64> zero{};
            w.raw(zero);
        } else {
            w.raw(in.signature.serialize());
        }
        w.bytes(in.public_key);
    }
    w.u32(static_cast<std::uint32_t>(outputs.size()));
    for (const auto& out : outputs) out.write(w);
    w.u8(asset_op.has_value());
    if (asset_op) asset_op->write(w, blank_signatures);
    w.u64(nonce);
}

Transaction Transaction::read(Reader& r) {
    if (r.u32() != kTxVersion) throw DecodeError("unsupported transaction version");
    Transaction tx;
    auto nin = r.u32();
    if (nin > r.remaining() / 40) throw DecodeError("input count exceeds payload");
    tx.inputs.reserve(nin);
    for (std::uint32_t i = 0; i < nin; ++i) {
        TxInput in;
        in.prevout.txid = r.hash();
        in.prevout.index = r.u32();
        in.signature = crypto::Signature::from_bytes(std::span<const std::uint8_t, 64>(r.raw(64).data(), 64));
        in.public_key = r.bytes();
        tx.inputs.push_back(std::move(in));
    }
    auto nout = r.u32();
    if (nout > r.remaining() / 30) throw DecodeError("output count exceeds payload");
    tx.outputs.reserve(nout);
    for (std::uint32_t i = 0; i < nout; ++i) tx.outputs.push_back(TxOutput::read(r));
    if (r.flag()) tx.asset_op = registry::AssetOperation::read(r);
    tx.nonce = r.u64();
    return tx;
}

Bytes Transaction::serialize() const {
    Writer w;
    write(w);
    return std::move(w).take();
}

Transaction Transaction::deserialize(ByteView bytes) {
    Reader r(bytes);
    auto tx = read(r);
    if (!r.empty()) throw DecodeError("trailing bytes after transaction");
    return tx;
}

Hash256 Transaction::txid() const { return crypto::double_sha256(serialize()); }

Bytes Transaction::signing_preimage() const {
    Writer w;
    w.raw(as_bytes("DDNS-TX"));
    write(w, true);
    return std::move(w).take();
}

std::uint64_t Transaction::weight() const { return weight_for_bytes(serialize().size()); }

std::uint64_t tx_weight(const Transaction& tx) { return tx.weight(); }

void sign_all_inputs(Transaction& tx, const crypto::KeyPair& key) {
    for (auto& in : tx.inputs) in.public_key.assign(key.public_key.bytes.begin(), key.public_key.bytes.end());
    auto preimage = tx.signing_preimage();
    auto sig = crypto::sign(key.secret_key, preimage);
    for (auto& in : tx.inputs) in.signature = sig;
}

}  // namespace ddns::chain
