#pragma once

#include "ddns/chain/params.hpp"
#include "ddns/chain/state.hpp"
#include "ddns/chain/transaction.hpp"
#include "ddns/registry/types.hpp"

#include <span>

namespace ddns::registry {

struct OpCheck {
    AssetReason reason = AssetReason::none;
    std::string detail;
    bool ok() const { return reason == AssetReason::none; }
};

/// Domain rules for a transaction carrying an asset operation.
/// `fee_available` is inputs minus outputs of the enclosing transaction.
OpCheck check_operation(const chain::Transaction& tx, const chain::ChainState& state, const chain::ChainParams& params,
                        std::int64_t fee_available);

/// True iff at least `policy.threshold` distinct policy keys produced valid
/// signatures over op.signing_preimage(). Duplicates count once; signatures
/// from keys outside the policy and malformed signatures are ignored.
bool verify_multisig_operation(const AssetOperation& op, const MultiSigPolicy& policy,
                               std::span<const Authorization> signatures);

/// Whether `op.authorization` satisfies ownership by `owner`: a single key
/// whose address is `owner`, or a policy committing to `owner` with enough
/// signatures.
bool is_authorized(const AssetOperation& op, const crypto::Address& owner);

/// Index of the receipt output within the transaction, if exactly one
/// output carries an asset.
std::optional<std::uint32_t> receipt_index(const chain::Transaction& tx);

/// Owner and content id after the operation takes effect.
DomainAsset resulting_asset(const AssetOperation& op, const DomainAsset* current, const OutPoint& receipt,
                            std::uint64_t height);

}  // namespace ddns::registry
