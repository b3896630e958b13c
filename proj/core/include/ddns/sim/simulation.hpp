#pragma once

#include "ddns/chain/params.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ddns::sim {

struct LatencyModel {
    enum class Kind { fixed, uniform };
    Kind kind = Kind::fixed;
    double min_ms = 100;
    double max_ms = 100;  // uniform only
};

struct HashShock {
    std::uint64_t block = 0;  // first block height mined at the new rate
    double multiplier = 1;
};

struct SimConfig {
    std::size_t nodes = 5;
    LatencyModel latency;
    /// Per-node share of hash power; empty means equal shares.
    std::vector<double> hash_shares;
    double target_interval = 15;
    double smoothing = 0.25;
    /// Transactions per second arriving network-wide, and the fraction that
    /// are 240 WU (the rest are 1,000 WU).
    double tx_rate = 0;
    double small_tx_fraction = 0.5;
    std::uint64_t max_block_weight = 4'000'000;
    /// Mining stops once the best chain reaches this height.
    std::uint64_t blocks = 1000;
    std::uint64_t seed = 1;
    std::optional<HashShock> shock;
    bool record_series = false;
};

/// Throws std::invalid_argument listing every problem.
void validate(const SimConfig& c);

nlohmann::json to_json(const SimConfig& c);
/// Missing fields take their defaults; unknown fields are rejected.
SimConfig sim_config_from_json(const nlohmann::json& j);

struct SeriesPoint {
    std::uint64_t height;
    double time;
    double interval;
    double difficulty;
};

struct SimReport {
    std::uint64_t total_blocks = 0;
    std::uint64_t orphaned_blocks = 0;
    std::uint64_t canonical_blocks = 0;  // excluding genesis
    double orphan_rate = 0;
    double mean_interval = 0;
    double stddev_interval = 0;
    double achieved_tps = 0;
    std::uint64_t transactions_confirmed = 0;
    bool tip_agreement = false;
    double duration = 0;  // simulated seconds to the last canonical block
    std::vector<SeriesPoint> series;  // canonical chain, when requested
};

nlohmann::json to_json(const SimReport& r);
/// Interval statistics over canonical blocks [from, to) by height.
double mean_interval(const SimReport& r, std::uint64_t from, std::uint64_t to);

/// Discrete-event run: Poisson block discovery per node proportional to
/// hash share over difficulty, full-mesh propagation with sampled link
/// latencies, longest chain with first-seen tie-breaking, per-block
/// retargeting. Identical configs give identical reports.
SimReport run_simulation(const SimConfig& config);

/// run_simulation with hash power multiplied at `shock_block`; the report
/// carries the canonical time series.
SimReport scenario_hashrate_shock(SimConfig config, std::uint64_t shock_block, double multiplier);

// End-to-end scenario over real nodes, transactions and resolvers.

struct EndToEndConfig {
    std::size_t nodes = 3;
    LatencyModel latency{LatencyModel::Kind::uniform, 20, 500};
    double block_interval = 15;
    /// Blocks every `block_interval` seconds exactly (the scripted run),
    /// or exponential gaps with that mean.
    bool poisson = false;
    /// How often the observing node queries its resolver.
    double poll_interval = 1;
    /// Blocks mined before the registration is broadcast.
    std::uint64_t warmup_blocks = 3;
    /// An extra node registers the same name on a private branch one block
    /// behind and publishes it.
    bool adversary = false;
    std::string domain = "example.ddns";
    std::uint64_t seed = 1;
    double give_up_after = 600;
};

struct TranscriptEvent {
    double time;
    std::string node;
    std::string what;
};

struct EndToEndResult {
    double broadcast_time = 0;
    std::optional<double> resolved_time;
    std::optional<std::uint64_t> included_height;
    std::string answer;  // presentation text of the first A record
    /// Owner of the domain on every node at the end (the honest key when
    /// the adversary lost).
    bool honest_owner_everywhere = false;
    bool adversary_block_orphaned = false;
    std::vector<TranscriptEvent> transcript;

    std::optional<double> elapsed() const {
        if (!resolved_time) return std::nullopt;
        return *resolved_time - broadcast_time;
    }
};

nlohmann::json to_json(const EndToEndResult& r);

EndToEndResult scenario_end_to_end(const EndToEndConfig& config);

}  // namespace ddns::sim
