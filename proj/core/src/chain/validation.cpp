#include "ddns/chain/validation.hpp"

#include "ddns/chain/difficulty.hpp"
#include "ddns/registry/rules.hpp"

#include <set>
#include <sstream>

namespace ddns::chain {

const char* code_name(ValidationCode c) {
    switch (c) {
        case ValidationCode::ok: return "ok";
        case ValidationCode::missing_utxo: return "missing-utxo";
        case ValidationCode::bad_signature: return "bad-signature";
        case ValidationCode::value_overflow: return "value-overflow";
        case ValidationCode::asset_rule_violation: return "asset-rule-violation";
        case ValidationCode::malformed: return "malformed";
        case ValidationCode::bad_pow: return "bad-pow";
        case ValidationCode::overweight: return "overweight";
        case ValidationCode::bad_merkle: return "bad-merkle";
        case ValidationCode::bad_difficulty: return "bad-difficulty";
        case ValidationCode::bad_timestamp: return "bad-timestamp";
        case ValidationCode::bad_coinbase: return "bad-coinbase";
        case ValidationCode::bad_tx: return "bad-tx";
        case ValidationCode::unknown_parent: return "unknown-parent";
        case ValidationCode::duplicate: return "duplicate";
        case ValidationCode::mempool_conflict: return "mempool-conflict";
    }
    return "unknown";
}

std::string ValidationReport::describe() const {
    std::ostringstream os;
    os << code_name(code);
    if (tx_index) os << "(" << *tx_index << ": " << code_name(tx_code) << ")";
    if (input_index) os << " input " << *input_index;
    if (output_index) os << " output " << *output_index;
    if (asset_reason != registry::AssetReason::none) os << " [" << registry::reason_name(asset_reason) << "]";
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

namespace {

bool add_checked(std::int64_t& acc, std::int64_t v) {
    if (v < 0 || v > kMaxMoney) return false;
    acc += v;
    return acc <= kMaxMoney;
}

ValidationReport input_fail(ValidationCode c, std::size_t i, std::string detail) {
    auto r = ValidationReport::fail(c, std::move(detail));
    r.input_index = i;
    return r;
}

}  // namespace

ValidationReport validate_transaction(const Transaction& tx, const ChainState& state, const ChainParams& params,
                                      std::int64_t* fee_out) {
    if (tx.is_coinbase()) return ValidationReport::fail(ValidationCode::bad_coinbase, "coinbase outside the first position");
    if (tx.outputs.empty()) return ValidationReport::fail(ValidationCode::malformed, "transaction has no outputs");

    std::int64_t out_sum = 0;
    for (std::size_t i = 0; i < tx.outputs.size(); ++i) {
        if (!add_checked(out_sum, tx.outputs[i].value)) {
            auto r = ValidationReport::fail(ValidationCode::value_overflow, "output value out of range");
            r.output_index = i;
            return r;
        }
    }

    std::set<OutPoint> seen;
    std::int64_t in_sum = 0;
    Bytes preimage;
    for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
        const auto& in = tx.inputs[i];
        if (!seen.insert(in.prevout).second) return input_fail(ValidationCode::missing_utxo, i, "output spent twice");
        const auto* coin = state.find_utxo(in.prevout);
        if (!coin) return input_fail(ValidationCode::missing_utxo, i, "no such unspent output");
        if (coin->output.asset) {
            auto r = input_fail(ValidationCode::asset_rule_violation, i, "domain receipts are not spendable");
            r.asset_reason = registry::AssetReason::bad_receipt;
            return r;
        }
        crypto::PublicKey pk;
        try {
            pk = crypto::PublicKey::parse(in.public_key);
        } catch (const crypto::CryptoError& e) {
            return input_fail(ValidationCode::bad_signature, i, e.what());
        }
        if (crypto::derive_address(pk) != coin->output.recipient)
            return input_fail(ValidationCode::bad_signature, i, "key does not own the spent output");
        if (preimage.empty()) preimage = tx.signing_preimage();
        if (!crypto::verify(pk, preimage, in.signature))
            return input_fail(ValidationCode::bad_signature, i, "signature does not verify");
        if (!add_checked(in_sum, coin->output.value))
            return input_fail(ValidationCode::value_overflow, i, "input sum out of range");
    }
    if (out_sum > in_sum) return ValidationReport::fail(ValidationCode::value_overflow, "outputs exceed inputs");
    std::int64_t fee = in_sum - out_sum;

    if (!tx.asset_op) {
        for (std::size_t i = 0; i < tx.outputs.size(); ++i) {
            if (tx.outputs[i].asset) {
                auto r = ValidationReport::fail(ValidationCode::asset_rule_violation, "asset output without an operation");
                r.asset_reason = registry::AssetReason::bad_receipt;
                r.output_index = i;
                return r;
            }
        }
    } else {
        auto check = registry::check_operation(tx, state, params, fee);
        if (!check.ok()) {
            auto r = ValidationReport::fail(ValidationCode::asset_rule_violation, check.detail);
            r.asset_reason = check.reason;
            return r;
        }
    }
    if (fee_out) *fee_out = fee;
    return {};
}

namespace {

ValidationReport check_pow(const BlockHeader& h) {
    if (!h.meets_target()) return ValidationReport::fail(ValidationCode::bad_pow, "header hash above target");
    return {};
}

ValidationReport check_difficulty_and_time(const BlockHeader& h, std::span<const BlockHeader> window,
                                           const ChainParams& params, std::optional<std::uint64_t> now) {
    if (h.target != adjust_difficulty(window, params))
        return ValidationReport::fail(ValidationCode::bad_difficulty, "target does not match the retarget rule");
    if (!window.empty() && h.timestamp <= median_time_past(window, params))
        return ValidationReport::fail(ValidationCode::bad_timestamp, "timestamp not after median time past");
    if (now && h.timestamp > *now + params.max_future_drift)
        return ValidationReport::fail(ValidationCode::bad_timestamp, "timestamp too far in the future");
    return {};
}

}  // namespace

ValidationReport validate_header(const BlockHeader& header, std::span<const BlockHeader> parent_window,
                                 const ChainParams& params, std::optional<std::uint64_t> now) {
    auto r = check_pow(header);
    if (!r.ok()) return r;
    return check_difficulty_and_time(header, parent_window, params, now);
}

namespace {

ValidationReport check_coinbase(const Block& block, const ChainParams& params) {
    if (block.transactions.empty() || !block.transactions.front().is_coinbase())
        return ValidationReport::fail(ValidationCode::bad_coinbase, "first transaction must be a coinbase");
    const auto& cb = block.transactions.front();
    std::int64_t sum = 0;
    for (const auto& o : cb.outputs) {
        if (o.asset || !add_checked(sum, o.value))
            return ValidationReport::fail(ValidationCode::bad_coinbase, "invalid coinbase output");
    }
    if (sum != params.block_subsidy) return ValidationReport::fail(ValidationCode::bad_coinbase, "coinbase must pay exactly the subsidy");
    if (cb.nonce != block.header.height) return ValidationReport::fail(ValidationCode::bad_coinbase, "coinbase nonce must equal height");
    return {};
}

}  // namespace

// Validates and applies in one pass over a scratch copy. Shared by
// validate_block and apply_block.
ValidationReport check_and_connect(ChainState& scratch, const Block& block, const ChainParams& params,
                                   std::optional<std::uint64_t> now, BlockUndo* undo) {
    if (block.header.previous_hash != scratch.tip)
        return ValidationReport::fail(ValidationCode::unknown_parent, "parent is not the state tip");
    if (block.header.height != scratch.height + 1)
        return ValidationReport::fail(ValidationCode::malformed, "height does not follow parent");

    auto r = check_pow(block.header);
    if (!r.ok()) return r;
    if (block.header.merkle_root != merkle_root(block.transactions))
        return ValidationReport::fail(ValidationCode::bad_merkle, "merkle root mismatch");
    auto weight = block.weight();
    if (weight > params.max_block_weight)
        return ValidationReport::fail(ValidationCode::overweight, std::to_string(weight) + " WU exceeds the block limit");
    auto window = scratch.header_window();
    r = check_difficulty_and_time(block.header, window, params, now);
    if (!r.ok()) return r;
    r = check_coinbase(block, params);
    if (!r.ok()) return r;

    BlockUndo local;
    BlockUndo& u = undo ? *undo : local;
    u = BlockUndo{};
    u.headers_before = scratch.recent_headers;
    u.tip_before = scratch.tip;
    u.height_before = scratch.height;

    apply_transaction(scratch, block.transactions.front(), block.header.height, &u, params);
    for (std::size_t i = 1; i < block.transactions.size(); ++i) {
        std::int64_t fee = 0;
        auto tr = validate_transaction(block.transactions[i], scratch, params, &fee);
        if (!tr.ok()) {
            ValidationReport out = tr;
            out.code = ValidationCode::bad_tx;
            out.tx_index = i;
            out.tx_code = tr.code;
            return out;
        }
        apply_transaction(scratch, block.transactions[i], block.header.height, &u, params);
    }

    scratch.tip = block.hash();
    scratch.height = block.header.height;
    scratch.recent_headers.push_back(block.header);
    while (scratch.recent_headers.size() > params.difficulty_window) scratch.recent_headers.pop_front();
    return {};
}

ValidationReport validate_block(const Block& block, const ChainState& state, const ChainParams& params,
                                std::optional<std::uint64_t> now) {
    ChainState scratch = state;
    return check_and_connect(scratch, block, params, now, nullptr);
}

Transaction make_coinbase(const crypto::Address& to, std::uint64_t height, const ChainParams& params) {
    Transaction tx;
    tx.outputs.push_back(TxOutput{params.block_subsidy, to, std::nullopt});
    tx.nonce = height;
    return tx;
}

Block make_genesis(const ChainParams& params) {
    Block b;
    Transaction cb;
    cb.outputs.push_back(TxOutput{0, crypto::Address{}, std::nullopt});
    b.transactions.push_back(cb);
    b.header.merkle_root = merkle_root(b.transactions);
    b.header.timestamp = params.genesis_timestamp;
    b.header.target = params.genesis_target;
    return b;
}

}  // namespace ddns::chain
