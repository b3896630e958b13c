#include "ddns/registry/rules.hpp"

#include "ddns/content/content_id.hpp"
#include "ddns/registry/names.hpp"

#include <set>

namespace ddns::registry {

namespace {

OpCheck fail(AssetReason r, std::string detail) { return {r, std::move(detail)}; }

bool valid_address(const crypto::Address& a) {
    return a.version == crypto::kAddressVersion || a.version == crypto::kPolicyAddressVersion;
}

}  // namespace

bool verify_multisig_operation(const AssetOperation& op, const MultiSigPolicy& policy,
                               std::span<const Authorization> signatures) {
    auto preimage = op.signing_preimage();
    std::set<std::size_t> signers;
    for (const auto& auth : signatures) {
        for (std::size_t i = 0; i < policy.keys.size(); ++i) {
            if (policy.keys[i] != auth.key || signers.count(i)) continue;
            try {
                if (crypto::verify(auth.key, preimage, auth.signature)) signers.insert(i);
            } catch (const crypto::CryptoError&) {
            }
        }
    }
    return signers.size() >= policy.threshold;
}

bool is_authorized(const AssetOperation& op, const crypto::Address& owner) {
    if (owner.is_policy()) {
        if (!op.policy || op.policy->threshold != 2 || op.policy->address() != owner) return false;
        const auto& k = op.policy->keys;
        if (k[0] == k[1] || k[1] == k[2] || k[0] == k[2]) return false;
        return verify_multisig_operation(op, *op.policy, op.authorization);
    }
    auto preimage = op.signing_preimage();
    for (const auto& auth : op.authorization) {
        if (crypto::derive_address(auth.key) != owner) continue;
        try {
            if (crypto::verify(auth.key, preimage, auth.signature)) return true;
        } catch (const crypto::CryptoError&) {
        }
    }
    return false;
}

std::optional<std::uint32_t> receipt_index(const chain::Transaction& tx) {
    std::optional<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) {
        if (!tx.outputs[i].asset) continue;
        if (idx) return std::nullopt;
        idx = i;
    }
    return idx;
}

DomainAsset resulting_asset(const AssetOperation& op, const DomainAsset* current, const OutPoint& receipt,
                            std::uint64_t height) {
    DomainAsset a;
    if (current) a = *current;
    a.asset_name = op.asset_name;
    a.quantity = 1;
    a.units = 1;
    a.reissuable = false;
    a.subsidized = op.subsidized;
    if (op.new_content_id) {
        a.ipfs_hash = op.new_content_id;
        a.has_ipfs = true;
    }
    if (op.new_owner) a.owner_address = *op.new_owner;
    a.receipt = receipt;
    a.updated_height = height;
    return a;
}

OpCheck check_operation(const chain::Transaction& tx, const chain::ChainState& state, const chain::ChainParams& params,
                        std::int64_t fee_available) {
    const auto& op = *tx.asset_op;

    auto name_check = validate_asset_name(op.asset_name);
    if (!name_check.ok()) return fail(AssetReason::invalid_name, name_error_name(name_check.error) + std::string(": ") + name_check.detail);

    bool root_subsidized = asset_root(op.asset_name) == kSubsidizedRoot;
    if (op.subsidized != root_subsidized)
        return fail(AssetReason::bad_fee, root_subsidized ? "DDNS operations are subsidized" : "only DDNS operations are subsidized");
    std::int64_t required = root_subsidized ? 0 : params.registration_fee;
    if (op.fee_paid != required) return fail(AssetReason::bad_fee, "fee_paid must be " + std::to_string(required));
    if (fee_available < op.fee_paid) return fail(AssetReason::insufficient_funds, "inputs do not cover the operation fee");

    if (op.new_content_id && !content::ContentId::try_parse(*op.new_content_id))
        return fail(AssetReason::bad_content_id, "malformed content id");
    if (op.new_owner && !valid_address(*op.new_owner)) return fail(AssetReason::invalid_address, "unknown address version");

    const DomainAsset* current = state.find_asset(op.asset_name);
    crypto::Address authority;
    switch (op.kind) {
        case OpKind::register_name:
            if (current) return fail(AssetReason::name_taken, op.asset_name + " is already registered");
            if (!op.new_content_id) return fail(AssetReason::bad_content_id, "register requires a content id");
            if (!op.new_owner) return fail(AssetReason::invalid_address, "register requires an owner");
            if (op.previous) return fail(AssetReason::stale_reference, "register must not reference a receipt");
            authority = *op.new_owner;
            break;
        case OpKind::update:
            if (!current) return fail(AssetReason::unknown_domain, op.asset_name + " is not registered");
            if (!op.new_content_id) return fail(AssetReason::bad_content_id, "update requires a content id");
            if (op.new_owner && *op.new_owner != current->owner_address)
                return fail(AssetReason::invalid_address, "update cannot change the owner");
            if (!op.previous || *op.previous != current->receipt)
                return fail(AssetReason::stale_reference, "operation does not reference the live receipt");
            authority = current->owner_address;
            break;
        case OpKind::transfer:
            if (!current) return fail(AssetReason::unknown_domain, op.asset_name + " is not registered");
            if (!op.new_owner) return fail(AssetReason::invalid_address, "transfer requires a new owner");
            if (op.new_content_id && op.new_content_id != current->ipfs_hash)
                return fail(AssetReason::bad_content_id, "transfer cannot change the content id");
            if (!op.previous || *op.previous != current->receipt)
                return fail(AssetReason::stale_reference, "operation does not reference the live receipt");
            authority = current->owner_address;
            break;
    }

    if (!is_authorized(op, authority)) return fail(AssetReason::not_owner, "operation not signed by the owner");

    if (tx.inputs.empty()) {
        if (tx.outputs.size() != 1) return fail(AssetReason::unbound_transaction, "an input-less operation carries only its receipt");
        if (tx.nonce != op.bound_nonce()) return fail(AssetReason::unbound_transaction, "nonce does not match the operation");
    }
    auto ridx = receipt_index(tx);
    if (!ridx) return fail(AssetReason::bad_receipt, "exactly one output must carry the domain asset");
    const auto& out = tx.outputs[*ridx];
    auto expected = resulting_asset(op, current, {}, 0);
    if (out.value != 0 || out.asset->name != op.asset_name || out.asset->quantity != 1 ||
        out.asset->content_id != expected.ipfs_hash.value_or("") || out.recipient != expected.owner_address)
        return fail(AssetReason::bad_receipt, "receipt output does not match the operation");
    return {};
}

}  // namespace ddns::registry
