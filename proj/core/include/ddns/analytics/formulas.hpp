#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ddns::analytics {

// Every function throws std::domain_error on inputs outside its domain.

/// Probability that at least one of several independent components fails:
/// 1 - prod(1 - p_i). Empty input gives 0.
double failure_probability(std::span<const double> p);

struct ThroughputParams {
    double block_weight_limit = 4'000'000;  // WU
    double avg_tx_weight = 1'000;           // WU
    double block_time = 15;                 // seconds
};

/// (block_weight_limit / avg_tx_weight) / block_time.
double theoretical_tps(const ThroughputParams& p);

struct TpsRow {
    std::string transaction_type;
    double weight;
    double tps;
};

/// The two-row table of theoretical maximum throughput at 4M WU per 15 s
/// block: minimal (240 WU) and regular (1,000 WU) transactions.
std::vector<TpsRow> throughput_table(double block_weight_limit = 4'000'000, double block_time = 15);
/// Fixed-width text rendering of throughput_table().
std::string format_throughput_table(const std::vector<TpsRow>& rows);

struct AttackAssessment {
    bool cost_exceeds_gain = false;
    double attack_cost = 0;
    double margin = 0;  // attack_cost - economic_gain
};

/// Attack cost as forgone mining rewards plus electricity, summed over the
/// attack period (both series cover the same t+1 blocks), compared with
/// the gain. Strict inequality.
AttackAssessment attack_cost_exceeds_gain(std::span<const double> mining_rewards,
                                          std::span<const double> electricity_costs, double economic_gain);

enum class CostKind { traditional, ddns };

struct CostParams {
    double registration_fee = 15;
    double annual_fee = 15;
    std::int64_t years = 0;
};

/// traditional: registration + years * annual fee; ddns: the one-off
/// registration fee regardless of years.
double cost_over_time(CostKind kind, const CostParams& p);
/// First whole year in which the traditional cost exceeds a one-off ddns
/// fee, or -1 when it never does.
std::int64_t cost_crossover_year(const CostParams& traditional, double ddns_fee);

/// k * n^alpha.
double network_value(double n, double k, double alpha);

}  // namespace ddns::analytics
