#include "ddns/sim/simulation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ddns::sim;

namespace {

SimConfig base(std::size_t nodes, double latency_ms, std::uint64_t blocks, std::uint64_t seed) {
    SimConfig c;
    c.nodes = nodes;
    c.latency = {LatencyModel::Kind::fixed, latency_ms, latency_ms};
    c.blocks = blocks;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Sim, SingleNodeNeverOrphans) {
    auto r = run_simulation(base(1, 5000, 500, 3));
    EXPECT_EQ(r.orphaned_blocks, 0u);
    EXPECT_EQ(r.orphan_rate, 0);
    EXPECT_EQ(r.canonical_blocks, 500u);
    EXPECT_TRUE(r.tip_agreement);
}

TEST(Sim, ZeroLatencyNeverOrphans) {
    auto r = run_simulation(base(5, 0, 2000, 4));
    EXPECT_EQ(r.orphaned_blocks, 0u);
    EXPECT_EQ(r.total_blocks, 2000u);
}

TEST(Sim, OrphanRateGrowsWithLatency) {
    double prev = -1;
    for (double ratio : {0.001, 0.01, 0.1}) {
        auto r = run_simulation(base(5, ratio * 15000, 5000, 11));
        EXPECT_GE(r.canonical_blocks, 5000u);
        EXPECT_EQ(r.orphan_rate, static_cast<double>(r.orphaned_blocks) / static_cast<double>(r.orphaned_blocks + r.canonical_blocks));
        EXPECT_GE(r.orphan_rate, prev) << "ratio " << ratio;
        if (ratio == 0.001) EXPECT_LT(r.orphan_rate, 0.01);
        EXPECT_TRUE(r.tip_agreement);
        prev = r.orphan_rate;
    }
    // With 4 competing nodes out of 5 the race window is about 0.8 * latency / interval.
    auto r = run_simulation(base(5, 1500, 5000, 11));
    EXPECT_NEAR(r.orphan_rate, 0.8 * 0.1, 0.03);
}

TEST(Sim, Deterministic) {
    auto c = base(5, 300, 800, 21);
    c.tx_rate = 20;
    c.record_series = true;
    auto a = to_json(run_simulation(c)).dump();
    EXPECT_EQ(a, to_json(run_simulation(c)).dump());
    c.seed = 22;
    EXPECT_NE(a, to_json(run_simulation(c)).dump());
}

TEST(Sim, IntervalsTrackTarget) {
    auto c = base(5, 100, 3000, 5);
    auto r = run_simulation(c);
    EXPECT_NEAR(r.mean_interval, 15, 1.0);
    // Exponential gaps: standard deviation close to the mean.
    EXPECT_NEAR(r.stddev_interval, r.mean_interval, 0.15 * r.mean_interval);
}

TEST(Sim, HashrateShockConverges) {
    double early = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto r = scenario_hashrate_shock(base(5, 200, 400, seed), 200, 2.0);
        early += mean_interval(r, 200, 210) / 5;
        EXPECT_NEAR(mean_interval(r, 270, 300), 15, 3) << "seed " << seed;
    }
    // Short-window means are noisy per seed; across seeds the speed-up shows.
    EXPECT_LT(early, 12);
}

TEST(Sim, NoOpShockMatchesBaseline) {
    auto c = base(5, 200, 300, 8);
    c.record_series = true;
    auto baseline = run_simulation(c);
    auto shocked = scenario_hashrate_shock(c, 100, 1.0);
    EXPECT_EQ(to_json(baseline).dump(), to_json(shocked).dump());
}

TEST(Sim, SlowdownLengthensThenRecovers) {
    double early = 0, shift = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto r = scenario_hashrate_shock(base(5, 200, 400, seed), 200, 0.5);
        early += mean_interval(r, 200, 210) / 5;
        EXPECT_NEAR(mean_interval(r, 270, 300), 15, 3) << "seed " << seed;
        // Every step moves difficulty against the previous gap.
        for (std::size_t i = 1; i + 1 < r.series.size(); ++i) {
            const auto& p = r.series[i];
            const auto& next = r.series[i + 1];
            if (p.interval > 15) EXPECT_LT(next.difficulty, p.difficulty);
            if (p.interval < 15) EXPECT_GT(next.difficulty, p.difficulty);
        }
        double before = 0, after = 0;
        for (const auto& p : r.series) {
            if (p.height >= 100 && p.height < 200) before += std::log(p.difficulty) / 100;
            if (p.height >= 250 && p.height < 400) after += std::log(p.difficulty) / 150;
        }
        shift += (after - before) / 5;
    }
    EXPECT_GT(early, 18);
    // The settled difficulty sits near half of the pre-shock level.
    EXPECT_NEAR(shift, std::log(0.5), 0.25);
}

TEST(Sim, ThroughputMatchesCapacityUnderLoad) {
    auto c = base(1, 0, 200, 9);
    c.tx_rate = 3000;
    c.small_tx_fraction = 1;
    auto r = run_simulation(c);
    // Saturated: every block carries floor(4e6 / 240) transactions.
    EXPECT_EQ(r.transactions_confirmed, 200u * (4'000'000 / 240));
    EXPECT_NEAR(r.achieved_tps, static_cast<double>(r.transactions_confirmed) / r.duration, 1e-9);

    c.tx_rate = 40;
    c.small_tx_fraction = 0.5;
    auto light = run_simulation(c);
    EXPECT_NEAR(light.achieved_tps, 40, 4);
}

TEST(Sim, ConfigJson) {
    auto c = base(4, 50, 100, 3);
    c.hash_shares = {0.4, 0.3, 0.2, 0.1};
    c.shock = HashShock{50, 2};
    auto back = sim_config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_THROW(sim_config_from_json(nlohmann::json{{"nodez", 3}}), std::invalid_argument);
    EXPECT_THROW(sim_config_from_json(nlohmann::json{{"nodes", 2}, {"hash_shares", {0.5, 0.6}}}), std::invalid_argument);
    auto uniform = sim_config_from_json(nlohmann::json::parse(R"({"latency":{"kind":"uniform","min_ms":10,"max_ms":90}})"));
    EXPECT_EQ(uniform.latency.kind, LatencyModel::Kind::uniform);
    EXPECT_EQ(uniform.latency.max_ms, 90);
}

TEST(EndToEnd, ScriptedPropagationWithinTwoIntervals) {
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        EndToEndConfig c;
        c.seed = seed;
        auto r = scenario_end_to_end(c);
        ASSERT_TRUE(r.resolved_time) << "seed " << seed;
        EXPECT_EQ(r.answer, "192.168.1.100");
        EXPECT_TRUE(r.honest_owner_everywhere);
        if (*r.elapsed() <= 30) ++within;
    }
    EXPECT_GE(within, 95);
}

TEST(EndToEnd, ZeroLatencyTakesOneInterval) {
    EndToEndConfig c;
    c.latency = {LatencyModel::Kind::fixed, 0, 0};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        c.seed = seed;
        auto r = scenario_end_to_end(c);
        ASSERT_TRUE(r.elapsed());
        EXPECT_DOUBLE_EQ(*r.elapsed(), 15.0);
        EXPECT_EQ(r.included_height, c.warmup_blocks + 1);
    }
}

TEST(EndToEnd, AdversaryLosesRace) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        EndToEndConfig c;
        c.adversary = true;
        c.seed = seed;
        auto r = scenario_end_to_end(c);
        ASSERT_TRUE(r.resolved_time);
        EXPECT_EQ(r.answer, "192.168.1.100");
        EXPECT_TRUE(r.honest_owner_everywhere) << "seed " << seed;
        EXPECT_TRUE(r.adversary_block_orphaned) << "seed " << seed;
    }
}

TEST(EndToEnd, PoissonCadenceIsSlowerInTheTail) {
    // Exponential block gaps: the wait for inclusion is itself exponential,
    // so a sizeable share of trials exceed two intervals.
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        EndToEndConfig c;
        c.poisson = true;
        c.seed = seed;
        auto r = scenario_end_to_end(c);
        ASSERT_TRUE(r.resolved_time);
        if (*r.elapsed() <= 30) ++within;
    }
    EXPECT_GT(within, 70);
    EXPECT_LT(within, 98);
}

TEST(EndToEnd, TranscriptIsDeterministic) {
    EndToEndConfig c;
    c.seed = 42;
    c.adversary = true;
    EXPECT_EQ(to_json(scenario_end_to_end(c)).dump(), to_json(scenario_end_to_end(c)).dump());
}
