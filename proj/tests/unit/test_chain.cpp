#include "ddns/chain/blockchain.hpp"
#include "ddns/chain/difficulty.hpp"
#include "ddns/chain/mempool.hpp"
#include "ddns/chain/miner.hpp"
#include "ddns/chain/node.hpp"
#include "ddns/chain/validation.hpp"
#include "ddns/crypto/hash.hpp"
#include "ddns/registry/builders.hpp"

#include "chain_harness.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace ddns;
using namespace ddns::chain;
using fixture::addr;
using fixture::ChainHarness;
using fixture::key;

namespace {

Block reseal(Block b) {
    b.header.merkle_root = merkle_root(b.transactions);
    MiningJob job{b};
    mine_step(job, 1u << 24);
    return job.block;
}

}  // namespace

TEST(Weight, FourUnitsPerByte) {
    EXPECT_EQ(weight_for_bytes(60), 240u);
    EXPECT_EQ(weight_for_bytes(250), 1000u);
    EXPECT_EQ(weight_for_bytes(0), 0u);
    auto cb = make_coinbase(addr(key(1)), 7, ChainParams::trivial());
    EXPECT_EQ(tx_weight(cb), 4 * cb.serialize().size());
}

TEST(Transaction, CanonicalRoundTrip) {
    ChainHarness h;
    auto a = key(1), b = key(2);
    h.mine_to(addr(a));
    auto tx = registry::pay(a, addr(b), 5 * kCoin, h.state());
    auto bytes = tx.serialize();
    auto back = Transaction::deserialize(bytes);
    EXPECT_EQ(back, tx);
    EXPECT_EQ(back.serialize(), bytes);
    EXPECT_EQ(tx.txid(), crypto::double_sha256(bytes));
    bytes.push_back(0);
    EXPECT_THROW(Transaction::deserialize(bytes), DecodeError);
}

TEST(Transaction, ValidationCodes) {
    ChainHarness h;
    auto a = key(1), b = key(2), c = key(3);
    h.mine_to(addr(a));
    const auto& st = h.state();

    auto tx = registry::pay(a, addr(b), 5 * kCoin, st);
    EXPECT_TRUE(validate_transaction(tx, st, h.params).ok());

    // Re-signed with a different key.
    auto forged = tx;
    sign_all_inputs(forged, c);
    auto r = validate_transaction(forged, st, h.params);
    EXPECT_EQ(r.code, ValidationCode::bad_signature);
    EXPECT_EQ(r.input_index, 0u);

    // Right key, signature over different bytes.
    auto mutated = tx;
    mutated.outputs[0].value += 1;
    EXPECT_EQ(validate_transaction(mutated, st, h.params).code, ValidationCode::bad_signature);

    // Outputs exceeding inputs.
    auto greedy = tx;
    greedy.outputs[0].value = 101 * kCoin;
    sign_all_inputs(greedy, a);
    EXPECT_EQ(validate_transaction(greedy, st, h.params).code, ValidationCode::value_overflow);

    auto negative = tx;
    negative.outputs[0].value = -1;
    sign_all_inputs(negative, a);
    r = validate_transaction(negative, st, h.params);
    EXPECT_EQ(r.code, ValidationCode::value_overflow);
    EXPECT_EQ(r.output_index, 0u);

    // Double spend across blocks.
    ASSERT_TRUE(h.submit(tx).ok());
    h.mine_to(addr(c));
    auto again = validate_transaction(tx, h.state(), h.params);
    EXPECT_EQ(again.code, ValidationCode::missing_utxo);
    EXPECT_EQ(again.input_index, 0u);

    // Same outpoint twice inside one transaction.
    auto d = key(4);
    h.mine_to(addr(d));
    auto twice = registry::pay(d, addr(b), kCoin, h.state());
    twice.inputs.push_back(twice.inputs[0]);
    sign_all_inputs(twice, d);
    EXPECT_EQ(validate_transaction(twice, h.state(), h.params).code, ValidationCode::missing_utxo);
}

TEST(Transaction, MalformedKeyIsBadSignature) {
    ChainHarness h;
    auto a = key(1);
    h.mine_to(addr(a));
    auto tx = registry::pay(a, addr(key(2)), kCoin, h.state());
    tx.inputs[0].public_key.resize(20);
    EXPECT_EQ(validate_transaction(tx, h.state(), h.params).code, ValidationCode::bad_signature);
}

TEST(Block, MinedBlockValidates) {
    ChainHarness h;
    auto a = key(1);
    auto parent = h.state();
    auto b = h.mine_to(addr(a));
    EXPECT_TRUE(validate_block(b, parent, h.params, h.clock).ok());
    EXPECT_LT(b.weight(), h.params.max_block_weight / 1000);
}

TEST(Block, FirstNonceAtEasiestTarget) {
    ChainHarness h;
    MiningJob job{build_template(h.state(), h.node.mempool(), addr(key(1)), h.clock + 15, h.params)};
    EXPECT_TRUE(mine_step(job, 1));
    EXPECT_EQ(job.hashes, 1u);
}

TEST(Block, WeightBoundary) {
    ChainHarness h;
    auto parent = h.state();
    auto cb = make_coinbase(addr(key(1)), 1, h.params);
    auto make = [&](std::uint64_t total_weight) {
        Block b;
        b.header.previous_hash = parent.tip;
        b.header.height = 1;
        b.header.timestamp = h.clock + 15;
        b.header.target = h.params.genesis_target;
        b.transactions.push_back(cb);
        // Junk filler: an input whose key bytes pad the transaction to size.
        Transaction filler;
        filler.inputs.push_back(TxInput{});
        filler.outputs.push_back(TxOutput{0, addr(key(2)), std::nullopt});
        auto base = filler.weight() + cb.weight();
        filler.inputs[0].public_key.resize((total_weight - base) / 4);
        b.transactions.push_back(filler);
        EXPECT_EQ(b.weight(), total_weight);
        return reseal(b);
    };
    auto at_limit = validate_block(make(4'000'000), parent, h.params);
    EXPECT_NE(at_limit.code, ValidationCode::overweight);
    EXPECT_EQ(at_limit.code, ValidationCode::bad_tx);  // the filler itself is junk
    // Weights are multiples of four; 4,000,004 is the smallest overweight block.
    EXPECT_EQ(validate_block(make(4'000'004), parent, h.params).code, ValidationCode::overweight);
}

TEST(Block, HeaderFailures) {
    auto params = ChainParams::trivial();
    params.genesis_target = crypto::shr(crypto::U256::max(), 16);
    params.pow_limit = params.genesis_target;
    ChainHarness h(params);
    auto parent = h.state();
    auto good = *h.node.mine(addr(key(1)), h.clock + 15, 1u << 24);
    ASSERT_TRUE(validate_block(good, parent, params, h.clock + 15).ok());

    auto bad_pow = good;
    while (bad_pow.header.meets_target()) ++bad_pow.header.nonce;
    EXPECT_EQ(validate_block(bad_pow, parent, params).code, ValidationCode::bad_pow);

    auto bad_merkle = good;
    bad_merkle.transactions[0].nonce = 99;
    bad_merkle = reseal(bad_merkle);
    bad_merkle.header.merkle_root.data[0] ^= 1;
    bad_merkle = [&] { MiningJob j{bad_merkle}; mine_step(j, 1u << 24); return j.block; }();
    EXPECT_EQ(validate_block(bad_merkle, parent, params).code, ValidationCode::bad_merkle);

    auto bad_diff = good;
    bad_diff.header.target = crypto::shr(params.genesis_target, 1);
    bad_diff = [&] { MiningJob j{bad_diff}; mine_step(j, 1u << 24); return j.block; }();
    EXPECT_EQ(validate_block(bad_diff, parent, params).code, ValidationCode::bad_difficulty);

    auto stale = good;
    stale.header.timestamp = params.genesis_timestamp;
    stale = [&] { MiningJob j{stale}; mine_step(j, 1u << 24); return j.block; }();
    EXPECT_EQ(validate_block(stale, parent, params).code, ValidationCode::bad_timestamp);

    auto future = good;
    future.header.timestamp = h.clock + 1000;
    future = [&] { MiningJob j{future}; mine_step(j, 1u << 24); return j.block; }();
    EXPECT_EQ(validate_block(future, parent, params, h.clock).code, ValidationCode::bad_timestamp);
    EXPECT_TRUE(validate_block(future, parent, params, std::nullopt).ok());

    auto unknown = good;
    unknown.header.previous_hash.data[5] ^= 1;
    EXPECT_EQ(validate_block(unknown, parent, params).code, ValidationCode::unknown_parent);
}

TEST(Block, CoinbaseRules) {
    ChainHarness h;
    auto parent = h.state();
    auto b = *h.node.mine(addr(key(1)), h.clock + 15);
    auto greedy = b;
    greedy.transactions[0].outputs[0].value += 1;
    EXPECT_EQ(validate_block(reseal(greedy), parent, h.params).code, ValidationCode::bad_coinbase);
    auto none = b;
    none.transactions.clear();
    EXPECT_EQ(validate_block(reseal(none), parent, h.params).code, ValidationCode::bad_coinbase);
    auto two = b;
    two.transactions.push_back(make_coinbase(addr(key(2)), 1, h.params));
    auto r = validate_block(reseal(two), parent, h.params);
    EXPECT_EQ(r.code, ValidationCode::bad_tx);
    EXPECT_EQ(r.tx_index, 1u);
    EXPECT_EQ(r.tx_code, ValidationCode::bad_coinbase);
}

TEST(Difficulty, Rules) {
    auto p = ChainParams::desk();
    std::vector<BlockHeader> w;
    EXPECT_EQ(adjust_difficulty(w, p), p.genesis_target);
    BlockHeader g;
    g.timestamp = 1000;
    g.target = p.genesis_target;
    w.push_back(g);
    EXPECT_EQ(adjust_difficulty(w, p), p.genesis_target);

    auto on_time = w;
    auto h = g;
    h.timestamp = 1015;
    on_time.push_back(h);
    EXPECT_EQ(adjust_difficulty(on_time, p), p.genesis_target);

    auto slow = w;
    h.timestamp = 1030;
    slow.push_back(h);
    EXPECT_GT(adjust_difficulty(slow, p), p.genesis_target);

    auto fast = w;
    h.timestamp = 1005;
    fast.push_back(h);
    EXPECT_LT(adjust_difficulty(fast, p), p.genesis_target);

    // Never easier than the proof-of-work limit.
    auto capped = slow;
    capped.back().target = p.pow_limit;
    EXPECT_EQ(adjust_difficulty(capped, p), p.pow_limit);

    // Full window of exact spacing: unchanged.
    std::vector<BlockHeader> steady;
    for (int i = 0; i < 30; ++i) {
        BlockHeader x;
        x.timestamp = 5000 + 15 * static_cast<std::uint64_t>(i);
        x.target = p.genesis_target;
        steady.push_back(x);
    }
    EXPECT_EQ(adjust_difficulty(steady, p), p.genesis_target);
    EXPECT_EQ(median_time_past(steady, p), 5000u + 15 * 24);
}

TEST(Difficulty, RetargetOffKeepsGenesis) {
    auto p = ChainParams::trivial();
    BlockHeader a, b;
    a.timestamp = 0;
    b.timestamp = 1;
    a.target = b.target = crypto::U256::from_u64(5);
    std::vector<BlockHeader> w{a, b};
    EXPECT_EQ(adjust_difficulty(w, p), p.genesis_target);
}

TEST(State, ConnectDisconnectIsInverse) {
    ChainHarness h;
    auto a = key(1), b = key(2);
    h.mine_to(addr(a));
    h.mine_to(addr(a));
    auto tx1 = registry::pay(a, addr(b), 7 * kCoin, h.state());
    ASSERT_TRUE(h.submit(tx1).ok());
    auto before = h.state();
    auto bytes_before = before.serialize();
    auto block = *h.node.mine(addr(b), h.clock + 15);
    ASSERT_EQ(block.transactions.size(), 2u);

    auto after = apply_block(before, block, h.params);
    EXPECT_NE(after.digest(), before.digest());
    EXPECT_EQ(before.serialize(), bytes_before);  // pure

    BlockUndo undo;
    ChainState work = before;
    ASSERT_TRUE(check_and_connect(work, block, h.params, std::nullopt, &undo).ok());
    EXPECT_EQ(work, after);
    disconnect_block(work, block, undo);
    EXPECT_EQ(work.serialize(), bytes_before);
}

TEST(State, ReplayMatchesIncremental) {
    ChainHarness h;
    auto a = key(1), b = key(2);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 12; ++i) {
        h.mine_to(addr(i % 2 ? a : b));
        auto from = i % 2 ? a : b;
        auto to = i % 2 ? b : a;
        registry::SpentSet spent;
        try {
            auto tx = registry::pay(from, addr(to), static_cast<std::int64_t>(1 + rng() % 50) * kCoin / 3, h.state(), spent, i);
            h.submit(tx);
        } catch (const registry::RegistryError&) {
        }
    }
    ChainState replay = genesis_state(h.node.chain().genesis(), h.params);
    for (std::uint64_t i = 1; i <= h.node.chain().height(); ++i)
        replay = apply_block(replay, *h.node.chain().block_at_height(i), h.params);
    EXPECT_EQ(replay.digest(), h.state().digest());
    // No inflation.
    EXPECT_EQ(h.state().utxo_value_sum(), h.state().total_subsidy - h.state().total_fees_burned);
    EXPECT_EQ(h.state().total_subsidy, static_cast<std::int64_t>(h.state().height) * h.params.block_subsidy);
}

TEST(State, SnapshotRoundTrip) {
    ChainHarness h;
    auto a = key(1);
    for (int i = 0; i < 3; ++i) h.mine_to(addr(a));
    fixture::TempDir dir;
    auto path = dir.path() / "state.snap";
    h.state().save_snapshot(path);
    EXPECT_EQ(ChainState::load_snapshot(path), h.state());
}

TEST(Fork, FirstSeenThenLongerBranchWins) {
    auto params = ChainParams::trivial();
    Node n1(params), n2(params);
    auto a = key(1), b = key(2), c = key(3);
    std::uint64_t t = params.genesis_timestamp;

    auto b1 = *n1.mine(addr(a), t += 15);
    n1.submit_block(b1, t);
    n2.submit_block(b1, t);
    auto pay = registry::pay(a, addr(c), 3 * kCoin, n1.state());
    ASSERT_TRUE(n1.submit_transaction(pay).ok());

    // Competing blocks at height 2; only n1's contains the payment.
    auto x = *n1.mine(addr(a), t + 15);
    auto y = *n2.mine(addr(b), t + 16);
    t += 16;
    ASSERT_EQ(x.transactions.size(), 2u);
    ASSERT_TRUE(n1.submit_block(x, t).tip_changed);
    auto side = n1.submit_block(y, t);
    EXPECT_TRUE(side.stored);
    EXPECT_FALSE(side.tip_changed);
    EXPECT_EQ(n1.chain().tip(), x.hash());  // first seen stays
    EXPECT_EQ(n1.mempool().size(), 0u);

    // n2 extends y; n1 switches and the payment returns to its mempool.
    n2.submit_block(y, t);
    auto z = *n2.mine(addr(b), t += 15);
    n2.submit_block(z, t);
    auto r = n1.submit_block(z, t);
    EXPECT_TRUE(r.reorganized);
    EXPECT_EQ(n1.chain().tip(), z.hash());
    ASSERT_EQ(r.disconnected.size(), 1u);
    EXPECT_EQ(r.disconnected[0].hash(), x.hash());
    ASSERT_EQ(r.returned.size(), 1u);
    EXPECT_EQ(r.returned[0].txid(), pay.txid());
    EXPECT_TRUE(n1.mempool().contains(pay.txid()));
    EXPECT_EQ(n1.state().digest(), n2.state().digest());
}

TEST(Fork, InvalidBranchDoesNotReplaceChain) {
    auto params = ChainParams::trivial();
    Node n(params);
    auto a = key(1);
    std::uint64_t t = params.genesis_timestamp;
    auto b1 = *n.mine(addr(a), t += 15);
    n.submit_block(b1, t);
    auto tip_before = n.chain().tip();
    auto digest_before = n.state().digest();

    // Side branch from genesis: valid header, then a block with a bad tx.
    Node side(params);
    auto s1 = *side.mine(addr(key(9)), t);
    side.submit_block(s1, t);
    auto s2 = *side.mine(addr(key(9)), t + 15);
    Transaction junk;
    junk.inputs.push_back(TxInput{});
    junk.outputs.push_back(TxOutput{1, addr(a), std::nullopt});
    s2.transactions.push_back(junk);
    s2 = reseal(s2);

    n.submit_block(s1, t);
    auto r = n.submit_block(s2, t + 15);
    EXPECT_FALSE(r.report.ok());
    EXPECT_EQ(n.chain().tip(), tip_before);
    EXPECT_EQ(n.state().digest(), digest_before);
}

TEST(Fork, OutOfOrderDelivery) {
    auto params = ChainParams::trivial();
    Node src(params), dst(params);
    std::uint64_t t = params.genesis_timestamp;
    std::vector<Block> blocks;
    for (int i = 0; i < 4; ++i) {
        auto b = *src.mine(addr(key(1)), t += 15);
        src.submit_block(b, t);
        blocks.push_back(b);
    }
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) dst.submit_block(*it, t);
    EXPECT_EQ(dst.chain().tip(), src.chain().tip());
    EXPECT_EQ(dst.chain().orphan_count(), 0u);
}

TEST(BlockFile, ReloadReproducesState) {
    fixture::TempDir dir;
    auto file = dir.path() / "blocks.dat";
    auto params = ChainParams::trivial();
    Hash256 digest;
    {
        Node n(params, file);
        std::uint64_t t = params.genesis_timestamp;
        for (int i = 0; i < 5; ++i) n.submit_block(*n.mine(addr(key(1)), t += 15), t);
        digest = n.state().digest();
    }
    Node again(params, file);
    EXPECT_EQ(again.state().digest(), digest);
    EXPECT_EQ(again.chain().height(), 5u);
    EXPECT_EQ(read_block_file(file).size(), 5u);
}

TEST(Mempool, GreedyFeeRateSelection) {
    auto params = ChainParams::trivial();
    ChainHarness h(params);
    std::vector<crypto::KeyPair> payers;
    for (int i = 0; i < 10; ++i) {
        payers.push_back(key(static_cast<std::uint8_t>(0x30 + i)));
        h.mine_to(addr(payers.back()));
    }
    // Ten transactions of varying size and fee.
    std::mt19937_64 rng(5);
    std::vector<Hash256> ids;
    for (int i = 0; i < 10; ++i) {
        Transaction tx;
        auto& p = payers[static_cast<std::size_t>(i)];
        for (const auto& [op, e] : h.state().utxo)
            if (e.output.recipient == addr(p)) tx.inputs.push_back(TxInput{op, {}, {}});
        auto outputs = 1 + rng() % 6;
        auto fee = static_cast<std::int64_t>(1000 + rng() % 100000);
        auto each = (params.block_subsidy - fee) / static_cast<std::int64_t>(outputs);
        for (std::uint64_t k = 0; k < outputs; ++k) tx.outputs.push_back(TxOutput{each, addr(key(0x77)), std::nullopt});
        tx.outputs[0].value += params.block_subsidy - fee - each * static_cast<std::int64_t>(outputs);
        sign_all_inputs(tx, p);
        ASSERT_TRUE(h.submit(tx).ok());
        ids.push_back(tx.txid());
    }
    // Limit that admits roughly half of them.
    std::uint64_t total = 0;
    for (const auto* e : h.node.mempool().ordered()) total += e->weight;
    auto tight = params;
    tight.max_block_weight = total / 2;

    auto block = build_template(h.state(), h.node.mempool(), addr(key(1)), h.clock + 15, tight);
    std::set<Hash256> included;
    for (std::size_t i = 1; i < block.transactions.size(); ++i) included.insert(block.transactions[i].txid());
    EXPECT_LE(block.weight(), tight.max_block_weight);

    // Independent greedy pass over every tx sorted by (fee/weight desc, arrival).
    auto entries = h.node.mempool().ordered();
    std::vector<const MempoolEntry*> sorted(entries.begin(), entries.end());
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
        long double ra = static_cast<long double>(a->fee) / a->weight, rb = static_cast<long double>(b->fee) / b->weight;
        if (ra != rb) return ra > rb;
        return a->arrival < b->arrival;
    });
    std::uint64_t used = block.transactions[0].weight();
    std::set<Hash256> expected;
    for (auto* e : sorted) {
        if (used + e->weight > tight.max_block_weight) {
            // Excluded only because the higher-rate ones already filled the block.
            continue;
        }
        used += e->weight;
        expected.insert(e->txid);
    }
    EXPECT_EQ(included, expected);
    EXPECT_GT(included.size(), 0u);
    EXPECT_LT(included.size(), 10u);
}

TEST(Mempool, ConflictsRefused) {
    ChainHarness h;
    auto a = key(1);
    h.mine_to(addr(a));
    auto t1 = registry::pay(a, addr(key(2)), kCoin, h.state(), {}, 1);
    auto t2 = registry::pay(a, addr(key(3)), kCoin, h.state(), {}, 2);
    ASSERT_TRUE(h.submit(t1).ok());
    EXPECT_EQ(h.submit(t1).code, ValidationCode::duplicate);
    EXPECT_EQ(h.submit(t2).code, ValidationCode::mempool_conflict);
}
