#include "ddns/registry/builders.hpp"

#include "ddns/content/content_id.hpp"
#include "ddns/registry/names.hpp"
#include "ddns/registry/rules.hpp"

namespace ddns::registry {

using chain::Transaction;
using chain::TxInput;
using chain::TxOutput;

namespace {

std::string normalize_name(std::string_view name) {
    if (name.find('/') == std::string_view::npos) {
        auto mapped = dns_to_asset(name);
        if (!mapped) throw RegistryError(AssetReason::invalid_name, "not a valid domain: " + std::string(name));
        return *mapped;
    }
    auto check = validate_asset_name(name);
    if (!check.ok())
        throw RegistryError(AssetReason::invalid_name, std::string(name_error_name(check.error)) + ": " + check.detail);
    return std::string(name);
}

// Adds inputs from `payer` covering `amount` plus change back to the payer.
void fund(Transaction& tx, const crypto::KeyPair& payer, std::int64_t amount, const chain::ChainState& state,
          const SpentSet& exclude) {
    if (amount <= 0) return;
    auto addr = crypto::derive_address(payer.public_key);
    std::int64_t gathered = 0;
    for (const auto& [p, e] : state.utxo) {
        if (gathered >= amount) break;
        if (e.output.asset || e.output.recipient != addr || e.output.value <= 0 || exclude.count(p)) continue;
        tx.inputs.push_back(TxInput{p, {}, {}});
        gathered += e.output.value;
    }
    if (gathered < amount) throw RegistryError(AssetReason::insufficient_funds, "not enough coins to pay the fee");
    if (gathered > amount) tx.outputs.push_back(TxOutput{gathered - amount, addr, std::nullopt});
}

Transaction finish(AssetOperation op, const DomainAsset* current, std::span<const crypto::KeyPair> signers,
                   const crypto::KeyPair& payer, const chain::ChainState& state, const chain::ChainParams& params,
                   const SpentSet& exclude) {
    bool subsidized = asset_root(op.asset_name) == kSubsidizedRoot;
    op.subsidized = subsidized;
    op.fee_paid = subsidized ? 0 : params.registration_fee;

    Transaction tx;
    auto preview = resulting_asset(op, current, {}, 0);
    tx.outputs.push_back(TxOutput{0, preview.owner_address,
                                  chain::CarriedAsset{op.asset_name, 1, preview.ipfs_hash.value_or("")}});
    fund(tx, payer, op.fee_paid, state, exclude);
    for (const auto& k : signers) authorize(op, k);
    tx.asset_op = std::move(op);
    tx.nonce = tx.inputs.empty() ? tx.asset_op->bound_nonce() : state.height;
    if (!tx.inputs.empty()) chain::sign_all_inputs(tx, payer);

    std::int64_t in = 0, out = 0;
    for (const auto& i : tx.inputs) in += state.find_utxo(i.prevout)->output.value;
    for (const auto& o : tx.outputs) out += o.value;
    auto check = check_operation(tx, state, params, in - out);
    if (!check.ok()) throw RegistryError(check.reason, check.detail);
    return tx;
}

const DomainAsset& require_asset(const chain::ChainState& state, const std::string& name) {
    const auto* a = state.find_asset(name);
    if (!a) throw RegistryError(AssetReason::unknown_domain, name + " is not registered");
    return *a;
}

void require_content_id(const std::string& cid) {
    if (!content::ContentId::try_parse(cid)) throw RegistryError(AssetReason::bad_content_id, "malformed content id " + cid);
}

}  // namespace

void authorize(AssetOperation& op, const crypto::KeyPair& key) {
    auto preimage = op.signing_preimage();
    op.authorization.push_back(Authorization{key.public_key, crypto::sign(key.secret_key, preimage)});
}

Transaction register_domain(std::string_view name, const std::string& content_id, const crypto::KeyPair& owner,
                            const chain::ChainState& state, const chain::ChainParams& params, const SpentSet& exclude) {
    auto asset = normalize_name(name);
    if (state.find_asset(asset)) throw RegistryError(AssetReason::name_taken, asset + " is already registered");
    require_content_id(content_id);
    AssetOperation op;
    op.kind = OpKind::register_name;
    op.asset_name = asset;
    op.new_content_id = content_id;
    op.new_owner = crypto::derive_address(owner.public_key);
    return finish(std::move(op), nullptr, std::span(&owner, 1), owner, state, params, exclude);
}

Transaction update_domain(std::string_view name, const std::string& new_content_id, const crypto::KeyPair& signer,
                          const chain::ChainState& state, const chain::ChainParams& params, const SpentSet& exclude) {
    auto asset = normalize_name(name);
    const auto& current = require_asset(state, asset);
    require_content_id(new_content_id);
    AssetOperation op;
    op.kind = OpKind::update;
    op.asset_name = asset;
    op.new_content_id = new_content_id;
    op.previous = current.receipt;
    return finish(std::move(op), &current, std::span(&signer, 1), signer, state, params, exclude);
}

Transaction transfer_domain(std::string_view name, const crypto::Address& new_owner, const crypto::KeyPair& signer,
                            const chain::ChainState& state, const chain::ChainParams& params, const SpentSet& exclude) {
    auto asset = normalize_name(name);
    const auto& current = require_asset(state, asset);
    AssetOperation op;
    op.kind = OpKind::transfer;
    op.asset_name = asset;
    op.new_owner = new_owner;
    op.previous = current.receipt;
    return finish(std::move(op), &current, std::span(&signer, 1), signer, state, params, exclude);
}

Transaction transfer_domain(std::string_view name, std::string_view new_owner, const crypto::KeyPair& signer,
                            const chain::ChainState& state, const chain::ChainParams& params, const SpentSet& exclude) {
    auto addr = crypto::Address::decode(new_owner);
    if (!addr) throw RegistryError(AssetReason::invalid_address, "cannot decode address " + std::string(new_owner));
    return transfer_domain(name, *addr, signer, state, params, exclude);
}

Transaction register_domain_multisig(std::string_view name, const std::string& content_id, const MultiSigPolicy& policy,
                                     std::span<const crypto::KeyPair> signers, const crypto::KeyPair& payer,
                                     const chain::ChainState& state, const chain::ChainParams& params,
                                     const SpentSet& exclude) {
    auto asset = normalize_name(name);
    if (state.find_asset(asset)) throw RegistryError(AssetReason::name_taken, asset + " is already registered");
    require_content_id(content_id);
    AssetOperation op;
    op.kind = OpKind::register_name;
    op.asset_name = asset;
    op.new_content_id = content_id;
    op.new_owner = policy.address();
    op.policy = policy;
    return finish(std::move(op), nullptr, signers, payer, state, params, exclude);
}

Transaction update_domain_multisig(std::string_view name, const std::string& new_content_id, const MultiSigPolicy& policy,
                                   std::span<const crypto::KeyPair> signers, const crypto::KeyPair& payer,
                                   const chain::ChainState& state, const chain::ChainParams& params,
                                   const SpentSet& exclude) {
    auto asset = normalize_name(name);
    const auto& current = require_asset(state, asset);
    require_content_id(new_content_id);
    AssetOperation op;
    op.kind = OpKind::update;
    op.asset_name = asset;
    op.new_content_id = new_content_id;
    op.previous = current.receipt;
    op.policy = policy;
    return finish(std::move(op), &current, signers, payer, state, params, exclude);
}

std::optional<DomainAsset> lookup_domain(const chain::ChainState& state, std::string_view name) {
    auto asset = normalize_name(name);
    const auto* a = state.find_asset(asset);
    if (!a) return std::nullopt;
    return *a;
}

Transaction pay(const crypto::KeyPair& from, const crypto::Address& to, std::int64_t amount,
                const chain::ChainState& state, const SpentSet& exclude, std::uint64_t nonce) {
    Transaction tx;
    tx.outputs.push_back(TxOutput{amount, to, std::nullopt});
    fund(tx, from, amount, state, exclude);
    tx.nonce = nonce;
    chain::sign_all_inputs(tx, from);
    return tx;
}

}  // namespace ddns::registry
