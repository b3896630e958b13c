#include "ddns/analytics/formulas.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ddns::analytics {

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}
}  // namespace

double failure_probability(std::span<const double> p) {
    double survive = 1;
    for (double q : p) {
        require(q >= 0 && q <= 1, "failure probabilities must lie in [0, 1]");
        survive *= 1 - q;
    }
    return 1 - survive;
}

double theoretical_tps(const ThroughputParams& p) {
    require(p.block_weight_limit > 0 && std::isfinite(p.block_weight_limit), "block weight limit must be positive");
    require(p.avg_tx_weight > 0 && std::isfinite(p.avg_tx_weight), "average transaction weight must be positive");
    require(p.block_time > 0 && std::isfinite(p.block_time), "block time must be positive");
    return p.block_weight_limit / p.avg_tx_weight / p.block_time;
}

std::vector<TpsRow> throughput_table(double block_weight_limit, double block_time) {
    std::vector<TpsRow> rows{{"Minimal Transaction", 240, 0}, {"Regular Transaction", 1000, 0}};
    for (auto& r : rows) r.tps = theoretical_tps({block_weight_limit, r.weight, block_time});
    return rows;
}

std::string format_throughput_table(const std::vector<TpsRow>& rows) {
    std::string out = "Transaction Type       Average Size (WU)   TPS (Theoretical Max)\n";
    char line[128];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-22s %17.0f   %21.1f\n", r.transaction_type.c_str(), r.weight, r.tps);
        out += line;
    }
    return out;
}

AttackAssessment attack_cost_exceeds_gain(std::span<const double> rewards, std::span<const double> electricity,
                                          double gain) {
    require(rewards.size() == electricity.size(), "reward and electricity series must have the same length");
    require(gain >= 0 && std::isfinite(gain), "economic gain must be non-negative");
    AttackAssessment a;
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        require(rewards[i] >= 0 && electricity[i] >= 0, "cost entries must be non-negative");
        require(std::isfinite(rewards[i]) && std::isfinite(electricity[i]), "cost entries must be finite");
        a.attack_cost += rewards[i] + electricity[i];
    }
    a.margin = a.attack_cost - gain;
    a.cost_exceeds_gain = a.attack_cost > gain;
    return a;
}

double cost_over_time(CostKind kind, const CostParams& p) {
    require(p.registration_fee >= 0 && p.annual_fee >= 0, "fees must be non-negative");
    require(p.years >= 0, "years must be non-negative");
    if (kind == CostKind::ddns) return p.registration_fee;
    return p.registration_fee + static_cast<double>(p.years) * p.annual_fee;
}

std::int64_t cost_crossover_year(const CostParams& p, double ddns_fee) {
    require(p.registration_fee >= 0 && p.annual_fee >= 0 && ddns_fee >= 0, "fees must be non-negative");
    if (p.registration_fee > ddns_fee) return 0;
    if (p.annual_fee == 0) return -1;
    return static_cast<std::int64_t>(std::floor((ddns_fee - p.registration_fee) / p.annual_fee)) + 1;
}

double network_value(double n, double k, double alpha) {
    require(n >= 0, "user count must be non-negative");
    require(k > 0, "scale must be positive");
    require(std::isfinite(alpha), "exponent must be finite");
    if (n == 0) return 0;
    return k * std::pow(n, alpha);
}

}  // namespace ddns::analytics
