#pragma once

#include "ddns/chain/block.hpp"
#include "ddns/chain/params.hpp"
#include "ddns/chain/state.hpp"
#include "ddns/registry/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace ddns::chain {

enum class ValidationCode {
    ok,
    missing_utxo,
    bad_signature,
    value_overflow,
    asset_rule_violation,
    malformed,
    bad_pow,
    overweight,
    bad_merkle,
    bad_difficulty,
    bad_timestamp,
    bad_coinbase,
    bad_tx,
    unknown_parent,
    duplicate,
    mempool_conflict,
};

const char* code_name(ValidationCode c);

struct ValidationReport {
    ValidationCode code = ValidationCode::ok;
    /// Offending transaction within a block (bad_tx) and the inner reason.
    std::optional<std::size_t> tx_index;
    ValidationCode tx_code = ValidationCode::ok;
    /// Offending input, or output for value checks.
    std::optional<std::size_t> input_index;
    std::optional<std::size_t> output_index;
    registry::AssetReason asset_reason = registry::AssetReason::none;
    std::string detail;

    bool ok() const { return code == ValidationCode::ok; }
    std::string describe() const;

    static ValidationReport fail(ValidationCode c, std::string detail) {
        ValidationReport r;
        r.code = c;
        r.detail = std::move(detail);
        return r;
    }
};

class BlockRejected : public std::runtime_error {
public:
    explicit BlockRejected(ValidationReport r) : std::runtime_error(r.describe()), report_(std::move(r)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Non-coinbase transaction against a state. Fee (inputs minus outputs) is
/// reported through `fee_out` when valid.
ValidationReport validate_transaction(const Transaction& tx, const ChainState& state, const ChainParams& params,
                                      std::int64_t* fee_out = nullptr);

/// Header-only checks: proof of work, difficulty target against the parent
/// window, timestamp against median time past and the local clock.
ValidationReport validate_header(const BlockHeader& header, std::span<const BlockHeader> parent_window,
                                 const ChainParams& params, std::optional<std::uint64_t> now);

/// Full check in order: proof of work, Merkle root, weight, difficulty,
/// timestamp, coinbase, then every transaction sequentially.
/// `state` must be the parent's state.
ValidationReport validate_block(const Block& block, const ChainState& state, const ChainParams& params,
                                std::optional<std::uint64_t> now = std::nullopt);

/// Validates `block` against `state` and applies it in place, recording
/// undo data. On failure `state` is left partially modified; callers pass
/// a scratch copy.
ValidationReport check_and_connect(ChainState& state, const Block& block, const ChainParams& params,
                                   std::optional<std::uint64_t> now, BlockUndo* undo);

/// Coinbase paying the full subsidy to `to`; nonce carries the height.
Transaction make_coinbase(const crypto::Address& to, std::uint64_t height, const ChainParams& params);

/// Deterministic genesis block derived from the parameters.
Block make_genesis(const ChainParams& params);

}  // namespace ddns::chain
