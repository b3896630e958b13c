#include "ddns/registry/types.hpp"

#include "ddns/crypto/hash.hpp"

#include <cstring>

namespace ddns::registry {

const char* reason_name(AssetReason r) {
    switch (r) {
        case AssetReason::none: return "none";
        case AssetReason::name_taken: return "name-taken";
        case AssetReason::invalid_name: return "invalid-name";
        case AssetReason::insufficient_funds: return "insufficient-funds";
        case AssetReason::not_owner: return "not-owner";
        case AssetReason::unknown_domain: return "unknown-domain";
        case AssetReason::invalid_address: return "invalid-address";
        case AssetReason::stale_reference: return "stale-reference";
        case AssetReason::bad_fee: return "bad-fee";
        case AssetReason::bad_receipt: return "bad-receipt";
        case AssetReason::bad_content_id: return "bad-content-id";
        case AssetReason::unbound_transaction: return "unbound-transaction";
    }
    return "unknown";
}

const char* kind_name(OpKind k) {
    switch (k) {
        case OpKind::register_name: return "register";
        case OpKind::update: return "update";
        case OpKind::transfer: return "transfer";
    }
    return "unknown";
}

namespace {

void write_address(Writer& w, const crypto::Address& a) {
    w.u8(a.version);
    w.raw(a.payload);
}

crypto::Address read_address(Reader& r) {
    crypto::Address a;
    a.version = r.u8();
    auto p = r.raw(20);
    std::memcpy(a.payload.data(), p.data(), 20);
    return a;
}

crypto::PublicKey read_key(Reader& r) {
    crypto::PublicKey k;
    auto b = r.raw(33);
    std::memcpy(k.bytes.data(), b.data(), 33);
    return k;
}

crypto::Signature read_sig(Reader& r) {
    return crypto::Signature::from_bytes(std::span<const std::uint8_t, 64>(r.raw(64).data(), 64));
}

}  // namespace

void AssetOperation::write(Writer& w, bool blank_signatures) const {
    w.u8(static_cast<std::uint8_t>(kind));
    w.str(asset_name);
    w.u8(new_content_id.has_value());
    if (new_content_id) w.str(*new_content_id);
    w.u8(new_owner.has_value());
    if (new_owner) write_address(w, *new_owner);
    w.i64(fee_paid);
    w.u8(subsidized);
    w.u8(previous.has_value());
    if (previous) {
        w.hash(previous->txid);
        w.u32(previous->index);
    }
    w.u8(policy.has_value());
    if (policy) {
        for (const auto& k : policy->keys) w.raw(k.bytes);
        w.u8(policy->threshold);
    }
    w.u32(static_cast<std::uint32_t>(authorization.size()));
    for (const auto& a : authorization) {
        w.raw(a.key.bytes);
        if (blank_signatures) {
            std::array<std::uint8_t, 64> zero{};
            w.raw(zero);
        } else {
            w.raw(a.signature.serialize());
        }
    }
}

AssetOperation AssetOperation::read(Reader& r) {
    AssetOperation op;
    auto kind = r.u8();
    if (kind < 1 || kind > 3) throw DecodeError("unknown asset operation kind");
    op.kind = static_cast<OpKind>(kind);
    op.asset_name = r.str(256);
    if (r.flag()) op.new_content_id = r.str(256);
    if (r.flag()) op.new_owner = read_address(r);
    op.fee_paid = r.i64();
    op.subsidized = r.flag();
    if (r.flag()) {
        OutPoint p;
        p.txid = r.hash();
        p.index = r.u32();
        op.previous = p;
    }
    if (r.flag()) {
        MultiSigPolicy pol;
        for (auto& k : pol.keys) k = read_key(r);
        pol.threshold = r.u8();
        op.policy = pol;
    }
    auto n = r.u32();
    if (n > 16) throw DecodeError("too many authorizations");
    for (std::uint32_t i = 0; i < n; ++i) {
        Authorization a;
        a.key = read_key(r);
        a.signature = read_sig(r);
        op.authorization.push_back(a);
    }
    return op;
}

Bytes AssetOperation::signing_preimage() const {
    Writer w;
    w.raw(as_bytes("DDNS-ASSET-OP"));
    AssetOperation bare = *this;
    bare.authorization.clear();
    bare.write(w);
    return std::move(w).take();
}

std::uint64_t AssetOperation::bound_nonce() const {
    auto h = crypto::sha256(signing_preimage());
    std::uint64_t n = 0;
    for (int i = 7; i >= 0; --i) n = n << 8 | h.data[static_cast<std::size_t>(i)];
    return n;
}

void DomainAsset::write(Writer& w) const {
    w.str(asset_name);
    w.u64(quantity);
    w.u32(units);
    w.u8(reissuable);
    w.u8(has_ipfs);
    w.u8(ipfs_hash.has_value());
    if (ipfs_hash) w.str(*ipfs_hash);
    write_address(w, owner_address);
    w.u8(subsidized);
    w.hash(receipt.txid);
    w.u32(receipt.index);
    w.u64(updated_height);
}

DomainAsset DomainAsset::read(Reader& r) {
    DomainAsset a;
    a.asset_name = r.str(256);
    a.quantity = r.u64();
    a.units = r.u32();
    a.reissuable = r.flag();
    a.has_ipfs = r.flag();
    if (r.flag()) a.ipfs_hash = r.str(256);
    a.owner_address = read_address(r);
    a.subsidized = r.flag();
    a.receipt.txid = r.hash();
    a.receipt.index = r.u32();
    a.updated_height = r.u64();
    return a;
}

}  // namespace ddns::registry
