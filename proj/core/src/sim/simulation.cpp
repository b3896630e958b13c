#include "ddns/sim/simulation.hpp"

#include "ddns/chain/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace ddns::sim {

using nlohmann::json;

void validate(const SimConfig& c) {
    std::vector<std::string> errs;
    if (c.nodes == 0) errs.push_back("nodes must be at least 1");
    if (!c.hash_shares.empty()) {
        if (c.hash_shares.size() != c.nodes) errs.push_back("hash_shares needs one entry per node");
        double sum = 0;
        for (double s : c.hash_shares) {
            if (!(s >= 0)) errs.push_back("hash shares must be non-negative");
            sum += s;
        }
        if (std::abs(sum - 1) > 1e-9) errs.push_back("hash shares must sum to 1");
    }
    if (!(c.latency.min_ms >= 0)) errs.push_back("latency must be non-negative");
    if (c.latency.kind == LatencyModel::Kind::uniform && !(c.latency.max_ms >= c.latency.min_ms))
        errs.push_back("latency max_ms below min_ms");
    if (!(c.target_interval > 0)) errs.push_back("target_interval must be positive");
    if (!(c.smoothing > 0)) errs.push_back("smoothing must be positive");
    if (!(c.tx_rate >= 0)) errs.push_back("tx_rate must be non-negative");
    if (!(c.small_tx_fraction >= 0 && c.small_tx_fraction <= 1)) errs.push_back("small_tx_fraction must be in [0, 1]");
    if (c.max_block_weight < 1000) errs.push_back("max_block_weight below one transaction");
    if (c.blocks == 0) errs.push_back("blocks must be at least 1");
    if (c.shock && !(c.shock->multiplier > 0)) errs.push_back("shock multiplier must be positive");
    if (errs.empty()) return;
    std::string msg = "invalid simulation config:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw std::invalid_argument(msg);
}

json to_json(const SimConfig& c) {
    json j{{"nodes", c.nodes},
           {"latency",
            {{"kind", c.latency.kind == LatencyModel::Kind::fixed ? "fixed" : "uniform"},
             {"min_ms", c.latency.min_ms},
             {"max_ms", c.latency.max_ms}}},
           {"hash_shares", c.hash_shares},
           {"target_interval", c.target_interval},
           {"smoothing", c.smoothing},
           {"tx_rate", c.tx_rate},
           {"small_tx_fraction", c.small_tx_fraction},
           {"max_block_weight", c.max_block_weight},
           {"blocks", c.blocks},
           {"seed", c.seed},
           {"record_series", c.record_series}};
    if (c.shock) j["shock"] = {{"block", c.shock->block}, {"multiplier", c.shock->multiplier}};
    return j;
}

SimConfig sim_config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("simulation config must be a JSON object");
    static const std::set<std::string> known{"nodes",    "latency",           "hash_shares",      "target_interval",
                                             "smoothing", "tx_rate",          "small_tx_fraction", "max_block_weight",
                                             "blocks",   "seed",              "shock",            "record_series"};
    for (const auto& [k, _] : j.items())
        if (!known.count(k)) throw std::invalid_argument("unknown simulation config field: " + k);
    SimConfig c;
    auto get = [&](const char* key, auto& out) {
        if (j.contains(key)) j.at(key).get_to(out);
    };
    try {
        get("nodes", c.nodes);
        get("hash_shares", c.hash_shares);
        get("target_interval", c.target_interval);
        get("smoothing", c.smoothing);
        get("tx_rate", c.tx_rate);
        get("small_tx_fraction", c.small_tx_fraction);
        get("max_block_weight", c.max_block_weight);
        get("blocks", c.blocks);
        get("seed", c.seed);
        get("record_series", c.record_series);
        if (j.contains("latency")) {
            const auto& l = j.at("latency");
            if (l.is_number()) {
                c.latency = {LatencyModel::Kind::fixed, l.get<double>(), l.get<double>()};
            } else {
                auto kind = l.value("kind", std::string("fixed"));
                if (kind != "fixed" && kind != "uniform") throw std::invalid_argument("latency kind must be fixed or uniform");
                c.latency.kind = kind == "fixed" ? LatencyModel::Kind::fixed : LatencyModel::Kind::uniform;
                c.latency.min_ms = l.value("min_ms", c.latency.min_ms);
                c.latency.max_ms = l.value("max_ms", c.latency.min_ms);
            }
        }
        if (j.contains("shock") && !j.at("shock").is_null())
            c.shock = HashShock{j.at("shock").at("block").get<std::uint64_t>(), j.at("shock").at("multiplier").get<double>()};
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("simulation config: ") + e.what());
    }
    validate(c);
    return c;
}

json to_json(const SimReport& r) {
    json j{{"total_blocks", r.total_blocks},
           {"orphaned_blocks", r.orphaned_blocks},
           {"canonical_blocks", r.canonical_blocks},
           {"orphan_rate", r.orphan_rate},
           {"mean_interval", r.mean_interval},
           {"stddev_interval", r.stddev_interval},
           {"achieved_tps", r.achieved_tps},
           {"transactions_confirmed", r.transactions_confirmed},
           {"tip_agreement", r.tip_agreement},
           {"duration", r.duration}};
    if (!r.series.empty()) {
        auto& s = j["series"] = json::array();
        for (const auto& p : r.series)
            s.push_back({{"height", p.height}, {"time", p.time}, {"interval", p.interval}, {"difficulty", p.difficulty}});
    }
    return j;
}

double mean_interval(const SimReport& r, std::uint64_t from, std::uint64_t to) {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& p : r.series)
        if (p.height >= from && p.height < to) {
            sum += p.interval;
            ++n;
        }
    return n ? sum / static_cast<double>(n) : std::nan("");
}

namespace {

// Uniform double in [0, 1) from the top 53 bits, so results do not depend
// on the standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double exponential(std::mt19937_64& rng, double mean) { return -std::log1p(-unit(rng)) * mean; }

struct SimBlock {
    std::int64_t parent;
    std::uint64_t height;
    double time;
    double difficulty;
    std::size_t miner;
    std::size_t tx_end;  // confirmed transactions form a prefix of arrivals
};

class Simulator {
public:
    explicit Simulator(const SimConfig& c) : c_(c), rng_(c.seed), tx_rng_(c.seed ^ 0x9e3779b97f4a7c15ull) {
        chain_params_.target_spacing = 1;  // intervals passed in target units
        chain_params_.smoothing = c.smoothing;
        shares_ = c.hash_shares;
        if (shares_.empty()) shares_.assign(c.nodes, 1.0 / static_cast<double>(c.nodes));
        blocks_.push_back({-1, 0, 0, 1, 0, 0});
        nodes_.resize(c.nodes);
        for (auto& n : nodes_) n.known.push_back(true);
        if (c.shock && c.shock->block <= 1) scale_ = c.shock->multiplier;
        for (std::size_t i = 0; i < c.nodes; ++i) start_mining(i, 0);
    }

    SimReport run() {
        while (!queue_.empty()) {
            auto ev = queue_.top();
            queue_.pop();
            now_ = ev.time;
            if (ev.kind == Event::found) {
                if (stopped_ || ev.gen != nodes_[ev.node].gen) continue;
                found(ev.node);
            } else {
                arrive(ev.node, ev.block);
            }
        }
        return report();
    }

private:
    struct Event {
        enum Kind { found, arrive } kind;
        double time;
        std::uint64_t seq;
        std::size_t node;
        std::uint64_t gen = 0;
        std::size_t block = 0;
        bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
    };
    struct Node {
        std::size_t tip = 0;
        std::vector<bool> known;
        std::multimap<std::size_t, std::size_t> waiting;  // parent -> children
        std::uint64_t gen = 0;
        double next = 0, rate = 0;
    };

    double next_difficulty(std::size_t parent) const {
        const auto& p = blocks_[parent];
        if (p.parent < 0) return p.difficulty;
        double interval = (p.time - blocks_[static_cast<std::size_t>(p.parent)].time) / c_.target_interval;
        return p.difficulty / chain::retarget_factor(interval, chain_params_);
    }

    double mining_rate(std::size_t i) const {
        return shares_[i] * scale_ / (c_.target_interval * next_difficulty(nodes_[i].tip));
    }

    void push(Event e) {
        e.seq = seq_++;
        queue_.push(e);
    }

    void start_mining(std::size_t i, double now) {
        auto& n = nodes_[i];
        n.rate = mining_rate(i);
        ++n.gen;
        if (n.rate <= 0) return;
        n.next = now + exponential(rng_, 1 / n.rate);
        push({Event::found, n.next, 0, i, n.gen});
    }

    // Exponential waiting times are memoryless, so a rate change just
    // rescales the remaining time; no fresh draw is needed.
    void rescale(std::size_t i) {
        auto& n = nodes_[i];
        double rate = mining_rate(i);
        if (rate == n.rate) return;
        ++n.gen;
        if (rate <= 0 || n.rate <= 0) {
            n.rate = rate;
            if (rate > 0) start_mining(i, now_);
            return;
        }
        n.next = now_ + (n.next - now_) * n.rate / rate;
        n.rate = rate;
        push({Event::found, n.next, 0, i, n.gen});
    }

    double latency() {
        double ms = c_.latency.kind == LatencyModel::Kind::fixed
                        ? c_.latency.min_ms
                        : c_.latency.min_ms + unit(rng_) * (c_.latency.max_ms - c_.latency.min_ms);
        return ms / 1000.0;
    }

    void arrivals_until(double t) {
        while (tx_time_.empty() || tx_time_.back() <= t) {
            double last = tx_time_.empty() ? 0 : tx_time_.back();
            tx_time_.push_back(last + exponential(tx_rng_, 1 / c_.tx_rate));
            auto w = unit(tx_rng_) < c_.small_tx_fraction ? 240ull : 1000ull;
            tx_weight_.push_back((tx_weight_.empty() ? 0 : tx_weight_.back()) + w);
        }
    }

    // Oldest-first: take the longest run of pending arrivals that fits.
    std::size_t fill(std::size_t start, double t) {
        if (c_.tx_rate <= 0) return 0;
        arrivals_until(t);
        auto avail = static_cast<std::size_t>(std::upper_bound(tx_time_.begin(), tx_time_.end(), t) - tx_time_.begin());
        std::uint64_t base = start ? tx_weight_[start - 1] : 0;
        auto fits = static_cast<std::size_t>(
            std::upper_bound(tx_weight_.begin(), tx_weight_.end(), base + c_.max_block_weight) - tx_weight_.begin());
        return std::max(start, std::min(avail, fits));
    }

    void found(std::size_t i) {
        auto parent = nodes_[i].tip;
        SimBlock b{static_cast<std::int64_t>(parent), blocks_[parent].height + 1, now_, next_difficulty(parent), i,
                   fill(blocks_[parent].tx_end, now_)};
        auto id = blocks_.size();
        blocks_.push_back(b);
        ++mined_;
        bool shock_now = c_.shock && !shocked_ && c_.shock->block > 1 && b.height + 1 >= c_.shock->block;
        if (shock_now) {
            shocked_ = true;
            scale_ = c_.shock->multiplier;
        }
        if (b.height >= c_.blocks) stopped_ = true;
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            if (j == i) continue;
            push({Event::arrive, now_ + latency(), 0, j, 0, id});
        }
        nodes_[i].rate = 0;  // its clock fired; the next search needs a fresh draw
        accept(i, id);
        if (shock_now && !stopped_)
            for (std::size_t j = 0; j < nodes_.size(); ++j)
                if (j != i) rescale(j);
    }

    void arrive(std::size_t j, std::size_t id) {
        auto& n = nodes_[j];
        if (n.known.size() > id && n.known[id]) return;
        auto parent = static_cast<std::size_t>(blocks_[id].parent);
        if (n.known.size() <= parent || !n.known[parent]) {
            n.waiting.emplace(parent, id);
            return;
        }
        accept(j, id);
    }

    void accept(std::size_t j, std::size_t id) {
        std::vector<std::size_t> todo{id};
        bool tip_changed = false;
        while (!todo.empty()) {
            auto b = todo.back();
            todo.pop_back();
            auto& n = nodes_[j];
            if (n.known.size() <= b) n.known.resize(blocks_.size(), false);
            n.known[b] = true;
            if (blocks_[b].height > blocks_[n.tip].height) {
                n.tip = b;
                tip_changed = true;
            }
            auto [lo, hi] = n.waiting.equal_range(b);
            for (auto it = lo; it != hi; ++it) todo.push_back(it->second);
            n.waiting.erase(lo, hi);
        }
        if (tip_changed && !stopped_) start_mining_on_new_tip(j);
    }

    void start_mining_on_new_tip(std::size_t j) {
        // A new tip changes the difficulty being worked on; the node's
        // progress carries over by memorylessness.
        if (nodes_[j].rate <= 0) {
            start_mining(j, now_);
            return;
        }
        rescale(j);
    }

    SimReport report() const {
        SimReport r;
        r.total_blocks = mined_;
        std::size_t best = nodes_[0].tip;
        r.tip_agreement = true;
        for (const auto& n : nodes_) {
            if (n.tip != nodes_[0].tip) r.tip_agreement = false;
            if (blocks_[n.tip].height > blocks_[best].height) best = n.tip;
        }
        std::vector<std::size_t> chain;
        for (auto b = static_cast<std::int64_t>(best); b > 0; b = blocks_[static_cast<std::size_t>(b)].parent)
            chain.push_back(static_cast<std::size_t>(b));
        std::reverse(chain.begin(), chain.end());
        r.canonical_blocks = chain.size();
        r.orphaned_blocks = mined_ - chain.size();
        r.orphan_rate = mined_ ? static_cast<double>(r.orphaned_blocks) / static_cast<double>(mined_) : 0;
        std::vector<double> iv;
        for (auto b : chain) {
            const auto& blk = blocks_[b];
            double interval = blk.time - blocks_[static_cast<std::size_t>(blk.parent)].time;
            iv.push_back(interval);
            if (c_.record_series) r.series.push_back({blk.height, blk.time, interval, blk.difficulty});
        }
        if (!iv.empty()) {
            r.mean_interval = std::accumulate(iv.begin(), iv.end(), 0.0) / static_cast<double>(iv.size());
            double ss = 0;
            for (double v : iv) ss += (v - r.mean_interval) * (v - r.mean_interval);
            r.stddev_interval = iv.size() > 1 ? std::sqrt(ss / static_cast<double>(iv.size() - 1)) : 0;
            r.duration = blocks_[best].time;
            r.transactions_confirmed = blocks_[best].tx_end;
            r.achieved_tps = r.duration > 0 ? static_cast<double>(r.transactions_confirmed) / r.duration : 0;
        }
        return r;
    }

    const SimConfig& c_;
    chain::ChainParams chain_params_;
    std::mt19937_64 rng_, tx_rng_;
    std::vector<double> shares_;
    std::vector<SimBlock> blocks_;
    std::vector<Node> nodes_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    std::vector<double> tx_time_;
    std::vector<std::uint64_t> tx_weight_;  // cumulative
    std::uint64_t seq_ = 0, mined_ = 0;
    double now_ = 0, scale_ = 1;
    bool stopped_ = false, shocked_ = false;
};

}  // namespace

SimReport run_simulation(const SimConfig& config) {
    validate(config);
    return Simulator(config).run();
}

SimReport scenario_hashrate_shock(SimConfig config, std::uint64_t shock_block, double multiplier) {
    config.shock = HashShock{shock_block, multiplier};
    config.record_series = true;
    return run_simulation(config);
}

}  // namespace ddns::sim
