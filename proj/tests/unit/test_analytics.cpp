#include "ddns/analytics/formulas.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>

using namespace ddns::analytics;

namespace {

nlohmann::json golden() {
    std::ifstream in(std::string(DDNS_FIXTURE_DIR) + "/analytics_golden.json");
    return nlohmann::json::parse(in);
}

// Relative error in units of double epsilon.
double ulps(double got, double want) {
    if (want == 0) return got == 0 ? 0 : INFINITY;
    return std::abs(got - want) / std::abs(want) / std::numeric_limits<double>::epsilon();
}

}  // namespace

TEST(FailureProbability, Examples) {
    EXPECT_EQ(failure_probability({}), 0);
    std::vector<double> certain{1.0, 0.37};
    EXPECT_EQ(failure_probability(certain), 1.0);
    std::vector<double> two{0.1, 0.2};
    EXPECT_NEAR(failure_probability(two), 0.28, 1e-15);
    std::vector<double> bad{0.5, 1.5};
    EXPECT_THROW(failure_probability(bad), std::domain_error);
    std::vector<double> neg{-0.1};
    EXPECT_THROW(failure_probability(neg), std::domain_error);
}

TEST(FailureProbability, MonteCarlo) {
    std::mt19937_64 rng(12345);
    std::bernoulli_distribution a(0.1), b(0.2);
    int fails = 0;
    const int trials = 1'000'000;
    for (int i = 0; i < trials; ++i) fails += (a(rng) || b(rng)) ? 1 : 0;
    EXPECT_NEAR(static_cast<double>(fails) / trials, 0.28, 0.001);
}

TEST(FailureProbability, Golden) {
    const auto golden_values = golden();
    for (const auto& v : golden_values["failure"]) {
        auto p = v["p"].get<std::vector<double>>();
        EXPECT_LE(ulps(failure_probability(p), v["value"].get<double>()), 64) << v.dump();
    }
}

TEST(FailureProbability, Monotone) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> p(1 + rng() % 8);
        for (auto& q : p) q = u(rng);
        double base = failure_probability(p);
        auto raised = p;
        auto i = rng() % p.size();
        raised[i] = raised[i] + (1 - raised[i]) * u(rng);
        EXPECT_GE(failure_probability(raised), base);
        auto longer = p;
        longer.push_back(u(rng));
        EXPECT_GE(failure_probability(longer), base);
    }
}

TEST(Throughput, TableValues) {
    EXPECT_NEAR(theoretical_tps({4'000'000, 240, 15}), 1111.1, 0.1);
    EXPECT_NEAR(theoretical_tps({4'000'000, 1000, 15}), 266.7, 0.1);
    EXPECT_DOUBLE_EQ(theoretical_tps({4'000'000, 4'000'000, 15}), 1.0 / 15);
    auto rows = throughput_table();
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].transaction_type, "Minimal Transaction");
    EXPECT_NEAR(rows[0].tps, 1111.1, 0.1);
    EXPECT_NEAR(rows[1].tps, 266.7, 0.1);
    auto text = format_throughput_table(rows);
    EXPECT_NE(text.find("1111.1"), std::string::npos);
    EXPECT_NE(text.find("266.7"), std::string::npos);
    const auto golden_values = golden();
    for (const auto& v : golden_values["tps"])
        EXPECT_LE(ulps(theoretical_tps({v["limit"], v["weight"], v["time"]}), v["tps"].get<double>()), 4);
}

TEST(Throughput, DomainErrors) {
    EXPECT_THROW(theoretical_tps({4e6, 0, 15}), std::domain_error);
    EXPECT_THROW(theoretical_tps({4e6, 240, 0}), std::domain_error);
    EXPECT_THROW(theoretical_tps({0, 240, 15}), std::domain_error);
    EXPECT_THROW(theoretical_tps({4e6, -1, 15}), std::domain_error);
}

TEST(Throughput, Homogeneous) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1, 1e7);
    for (int i = 0; i < 1000; ++i) {
        ThroughputParams p{u(rng), u(rng), u(rng) / 1e5};
        double base = theoretical_tps(p);
        EXPECT_DOUBLE_EQ(theoretical_tps({2 * p.block_weight_limit, p.avg_tx_weight, p.block_time}), 2 * base);
        EXPECT_DOUBLE_EQ(theoretical_tps({p.block_weight_limit, 2 * p.avg_tx_weight, p.block_time}), base / 2);
    }
}

TEST(Attack, Examples) {
    std::vector<double> zeros(5, 0.0);
    auto a = attack_cost_exceeds_gain(zeros, zeros, 1);
    EXPECT_FALSE(a.cost_exceeds_gain);
    EXPECT_EQ(a.margin, -1);
    std::vector<double> r{40, 10}, e{30, 20};
    auto b = attack_cost_exceeds_gain(r, e, 99);
    EXPECT_TRUE(b.cost_exceeds_gain);
    EXPECT_EQ(b.margin, 1);
    EXPECT_EQ(b.attack_cost, 100);
    auto tie = attack_cost_exceeds_gain(r, e, 100);
    EXPECT_FALSE(tie.cost_exceeds_gain);  // strict inequality
    std::vector<double> shorter{1};
    EXPECT_THROW(attack_cost_exceeds_gain(r, shorter, 1), std::domain_error);
    std::vector<double> negative{-1, 2};
    EXPECT_THROW(attack_cost_exceeds_gain(negative, e, 1), std::domain_error);
}

TEST(Attack, MatchesIndependentSummation) {
    const auto golden_values = golden();
    for (const auto& v : golden_values["attack"]) {
        auto r = v["rewards"].get<std::vector<double>>();
        auto e = v["electricity"].get<std::vector<double>>();
        auto a = attack_cost_exceeds_gain(r, e, v["gain"].get<double>());
        EXPECT_NEAR(a.attack_cost, v["cost"].get<double>(), 1e-9 * v["cost"].get<double>());
        EXPECT_NEAR(a.margin, v["margin"].get<double>(), 1e-9 * v["cost"].get<double>());
        EXPECT_EQ(a.cost_exceeds_gain, v["margin"].get<double>() > 0);
    }
    // Naive re-summation in long double, on random series.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 1000);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> r(1 + rng() % 300), e(r.size());
        long double sum = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = u(rng);
            e[i] = u(rng);
            sum += static_cast<long double>(r[i]) + e[i];
        }
        auto a = attack_cost_exceeds_gain(r, e, 12345);
        EXPECT_NEAR(a.margin, static_cast<double>(sum - 12345), 1e-9 * static_cast<double>(sum));
    }
}

TEST(Cost, Examples) {
    EXPECT_EQ(cost_over_time(CostKind::ddns, {15, 15, 0}), 15);
    EXPECT_EQ(cost_over_time(CostKind::ddns, {15, 15, 40}), 15);
    EXPECT_EQ(cost_over_time(CostKind::traditional, {15, 15, 0}), 15);
    EXPECT_EQ(cost_over_time(CostKind::traditional, {15, 15, 5}), 90);
    EXPECT_EQ(cost_crossover_year({15, 15, 0}, 15), 1);
    EXPECT_EQ(cost_crossover_year({15, 15, 0}, 100), 6);
    EXPECT_EQ(cost_crossover_year({15, 0, 0}, 15), -1);
    EXPECT_EQ(cost_crossover_year({20, 0, 0}, 15), 0);
    EXPECT_THROW(cost_over_time(CostKind::traditional, {15, -1, 3}), std::domain_error);
    EXPECT_THROW(cost_over_time(CostKind::traditional, {15, 1, -3}), std::domain_error);
}

TEST(Cost, GapNondecreasing) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 100);
    for (int t = 0; t < 200; ++t) {
        CostParams p{u(rng), u(rng), 0};
        double prev = -INFINITY;
        for (std::int64_t y = 0; y <= 50; ++y) {
            p.years = y;
            double gap = cost_over_time(CostKind::traditional, p) - cost_over_time(CostKind::ddns, p);
            EXPECT_GE(gap, prev);
            prev = gap;
        }
    }
}

TEST(NetworkValue, Examples) {
    EXPECT_EQ(network_value(0, 1, 2), 0);
    EXPECT_EQ(network_value(10, 1, 2), 100);
    EXPECT_THROW(network_value(-1, 1, 2), std::domain_error);
    EXPECT_THROW(network_value(10, 0, 2), std::domain_error);
}

TEST(NetworkValue, HighPrecisionOracle) {
    const auto golden_values = golden();
    for (const auto& v : golden_values["network_value"]) {
        double got = network_value(v["n"].get<double>(), v["k"].get<double>(), v["alpha"].get<double>());
        EXPECT_LE(ulps(got, v["value"].get<double>()), 8) << v.dump() << " got " << got;
    }
}

TEST(NetworkValue, PositiveEffectsIffSuperlinear) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> n(1, 1e6), k(0.001, 100), a(0.2, 2.5);
    for (int t = 0; t < 2000; ++t) {
        double nn = n(rng), kk = k(rng), aa = a(rng);
        if (std::abs(aa - 1) < 1e-6) continue;
        bool superlinear = network_value(2 * nn, kk, aa) / network_value(nn, kk, aa) > 2;
        EXPECT_EQ(superlinear, aa > 1) << nn << " " << kk << " " << aa;
    }
    EXPECT_NEAR(network_value(2000, 3, 1) / network_value(1000, 3, 1), 2, 1e-12);
}
