#pragma once

#include "ddns/chain/params.hpp"
#include "ddns/chain/state.hpp"
#include "ddns/chain/transaction.hpp"
#include "ddns/registry/types.hpp"

#include <set>
#include <span>

namespace ddns::registry {

/// Coins already committed elsewhere (e.g. spent by pending transactions)
/// that funding must not reuse.
using SpentSet = std::set<OutPoint>;

/// Builders validate eagerly against `state` and throw RegistryError with
/// the same reasons validation would report. Fees are funded from coins
/// owned by the signer's address; change goes back to that address.

chain::Transaction register_domain(std::string_view name, const std::string& content_id, const crypto::KeyPair& owner,
                                   const chain::ChainState& state, const chain::ChainParams& params,
                                   const SpentSet& exclude = {});

chain::Transaction update_domain(std::string_view name, const std::string& new_content_id, const crypto::KeyPair& signer,
                                 const chain::ChainState& state, const chain::ChainParams& params,
                                 const SpentSet& exclude = {});

chain::Transaction transfer_domain(std::string_view name, std::string_view new_owner, const crypto::KeyPair& signer,
                                   const chain::ChainState& state, const chain::ChainParams& params,
                                   const SpentSet& exclude = {});

chain::Transaction transfer_domain(std::string_view name, const crypto::Address& new_owner, const crypto::KeyPair& signer,
                                   const chain::ChainState& state, const chain::ChainParams& params,
                                   const SpentSet& exclude = {});

/// Policy-owned variants. `signers` are the holders producing signatures;
/// `payer` funds the fee (unused for subsidized names).
chain::Transaction register_domain_multisig(std::string_view name, const std::string& content_id,
                                            const MultiSigPolicy& policy, std::span<const crypto::KeyPair> signers,
                                            const crypto::KeyPair& payer, const chain::ChainState& state,
                                            const chain::ChainParams& params, const SpentSet& exclude = {});

chain::Transaction update_domain_multisig(std::string_view name, const std::string& new_content_id,
                                          const MultiSigPolicy& policy, std::span<const crypto::KeyPair> signers,
                                          const crypto::KeyPair& payer, const chain::ChainState& state,
                                          const chain::ChainParams& params, const SpentSet& exclude = {});

/// Signs op.signing_preimage() with `key` and appends the authorization.
void authorize(AssetOperation& op, const crypto::KeyPair& key);

/// Looks up an asset by DNS name ("example.ddns") or asset name
/// ("DDNS/EXAMPLE"). Throws RegistryError{invalid_name} for names that map
/// to no valid asset name.
std::optional<DomainAsset> lookup_domain(const chain::ChainState& state, std::string_view name);

/// Plain coin transfer funded from `from`'s coins.
chain::Transaction pay(const crypto::KeyPair& from, const crypto::Address& to, std::int64_t amount,
                       const chain::ChainState& state, const SpentSet& exclude = {}, std::uint64_t nonce = 0);

}  // namespace ddns::registry
