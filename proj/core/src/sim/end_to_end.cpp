#include "ddns/chain/node.hpp"
#include "ddns/content/content_id.hpp"
#include "ddns/registry/builders.hpp"
#include "ddns/resolver/resolver.hpp"
#include "ddns/sim/simulation.hpp"
#include "ddns/zone/control_file.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>

namespace ddns::sim {

using nlohmann::json;

json to_json(const EndToEndResult& r) {
    json j{{"broadcast_time", r.broadcast_time},
           {"resolved_time", r.resolved_time ? json(*r.resolved_time) : json(nullptr)},
           {"elapsed", r.elapsed() ? json(*r.elapsed()) : json(nullptr)},
           {"included_height", r.included_height ? json(*r.included_height) : json(nullptr)},
           {"answer", r.answer},
           {"honest_owner_everywhere", r.honest_owner_everywhere},
           {"adversary_block_orphaned", r.adversary_block_orphaned}};
    auto& t = j["transcript"] = json::array();
    for (const auto& e : r.transcript) t.push_back({{"time", e.time}, {"node", e.node}, {"event", e.what}});
    return j;
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

crypto::KeyPair key_from(std::uint64_t seed, std::uint64_t who) {
    std::array<std::uint8_t, 32> s{};
    std::mt19937_64 g(seed * 1000003 + who);
    for (auto& b : s) b = static_cast<std::uint8_t>(g());
    s[0] |= 1;  // never the zero scalar
    return crypto::generate_keypair(std::span<const std::uint8_t, 32>(s));
}

// Each node's view of the content network: objects arrive with the same
// link latencies as blocks and transactions.
class LocalContent : public resolver::ContentSource {
public:
    Bytes fetch(const content::ContentId& id) override {
        auto it = objects.find(id.text());
        if (it == objects.end()) throw content::StoreError(content::StoreError::Code::not_found, "not yet replicated");
        return it->second;
    }
    std::map<std::string, Bytes> objects;
};

std::string zone_for(const std::string& domain) {
    return R"({"version":"2.0","domain":")" + domain +
           R"(","records":{"@":{"A":[{"address":"192.168.1.100","ttl":3600}]},"www":{"CNAME":[{"target":")" + domain +
           R"(","ttl":3600}]}}})";
}

class Scenario {
public:
    explicit Scenario(const EndToEndConfig& c) : c_(c), rng_(c.seed), params_(chain::ChainParams::trivial()) {
        if (c.nodes < 3) throw std::invalid_argument("end-to-end scenario needs at least 3 nodes");
        params_.target_spacing = static_cast<std::uint64_t>(std::llround(c.block_interval));
        std::size_t total = c.nodes + (c.adversary ? 1 : 0);
        for (std::size_t i = 0; i < total; ++i) {
            peers_.push_back(std::make_unique<Peer>(params_));
            peers_.back()->key = key_from(c.seed, 100 + i);
            peers_.back()->name = i == total - 1 && c.adversary ? "D" : std::string(1, static_cast<char>('A' + i));
        }
        owner_ = key_from(c.seed, 1);
        adversary_key_ = key_from(c.seed, 2);
        auto& obs = *peers_[observer()];
        obs.resolver = std::make_unique<resolver::Resolver>(
            resolver::ResolverConfig{}, std::make_shared<resolver::StateDirectory>(std::make_shared<chain::ChainState>(obs.node.state())),
            obs.content, [this] { return now_; });
    }

    // Runs until mining stops and every in-flight delivery has landed.
    EndToEndResult run() {
        schedule_block(0);
        while (!queue_.empty()) {
            auto ev = queue_.top();
            queue_.pop();
            now_ = ev.time;
            ev.fn();
        }
        finish();
        return result_;
    }

private:
    struct Peer {
        explicit Peer(const chain::ChainParams& p) : node(p) {}
        chain::Node node;
        crypto::KeyPair key;
        std::string name;
        std::shared_ptr<LocalContent> content = std::make_shared<LocalContent>();
        std::unique_ptr<resolver::Resolver> resolver;
        bool withholding = false;  // adversary: ignores the block carrying the honest registration
    };
    struct Event {
        double time;
        int priority;  // deliveries before polls at equal times
        std::uint64_t seq;
        std::function<void()> fn;
        bool operator>(const Event& o) const {
            if (time != o.time) return time > o.time;
            if (priority != o.priority) return priority > o.priority;
            return seq > o.seq;
        }
    };

    std::size_t observer() const { return c_.nodes - 1; }
    std::size_t adversary() const { return c_.nodes; }

    void at(double t, int priority, std::function<void()> fn) { queue_.push({t, priority, seq_++, std::move(fn)}); }

    void log(const Peer& p, std::string what) { result_.transcript.push_back({now_, p.name, std::move(what)}); }

    double latency() {
        const auto& l = c_.latency;
        double ms = l.kind == LatencyModel::Kind::fixed ? l.min_ms : l.min_ms + unit(rng_) * (l.max_ms - l.min_ms);
        return ms / 1000.0;
    }

    std::uint64_t stamp(const Peer& p) const {
        auto ts = params_.genesis_timestamp + static_cast<std::uint64_t>(std::floor(now_));
        const auto* tip = p.node.chain().find_block(p.node.state().tip);
        return std::max(ts, tip->header.timestamp + 1);
    }

    void schedule_block(std::uint64_t n) {
        double gap = c_.poisson ? -std::log1p(-unit(rng_)) * c_.block_interval : c_.block_interval;
        at(now_ + gap, 0, [this, n] {
            if (mining_over()) return;
            mine(static_cast<std::size_t>(rng_() % c_.nodes), n + 1);
            schedule_block(n + 1);
        });
    }

    void mine(std::size_t m, std::uint64_t n) {
        auto& p = *peers_[m];
        auto block = p.node.mine(crypto::derive_address(p.key.public_key), stamp(p), 1u << 20);
        if (!block) return;
        auto before = std::make_shared<chain::ChainState>(p.node.state());
        auto r = p.node.submit_block(*block, stamp(p));
        if (!r.report.ok()) return;
        refresh_view(p, *before);
        log(p, "mined block " + std::to_string(block->header.height) + " with " +
                   std::to_string(block->transactions.size() - 1) + " transaction(s)");
        note_inclusion(*block);
        broadcast_block(m, *block);
        if (n == c_.warmup_blocks) {
            // The owner at A broadcasts once A holds this block.
            double when = m == 0 ? now_ : now_ + pending_latency_.at(0);
            at(when, 0, [this] { register_domain(); });
        }
    }

    void broadcast_block(std::size_t from, const chain::Block& b) {
        pending_latency_.assign(peers_.size(), 0);
        for (std::size_t j = 0; j < peers_.size(); ++j) {
            if (j == from) continue;
            double l = latency();
            pending_latency_[j] = l;
            at(now_ + l, 0, [this, j, b] { deliver_block(j, b); });
        }
    }

    void note_inclusion(const chain::Block& b) {
        if (!honest_txid_ || result_.included_height) return;
        for (const auto& tx : b.transactions)
            if (tx.txid() == *honest_txid_) result_.included_height = b.header.height;
    }

    void deliver_block(std::size_t j, const chain::Block& b) {
        auto& p = *peers_[j];
        if (c_.adversary && j == adversary() && honest_txid_ && !adversary_done_) {
            for (const auto& tx : b.transactions)
                if (tx.txid() == *honest_txid_) {
                    p.withholding = true;
                    held_.push_back(b);
                    log(p, "withholds block " + std::to_string(b.header.height) + " and mines a rival registration");
                    at(now_ + c_.block_interval, 0, [this] { adversary_strike(); });
                    return;
                }
            if (p.withholding) {
                held_.push_back(b);
                return;
            }
        }
        auto before = std::make_shared<chain::ChainState>(p.node.state());
        auto r = p.node.submit_block(b, params_.genesis_timestamp + static_cast<std::uint64_t>(std::ceil(now_)) + 1);
        if (!r.report.ok()) {
            log(p, "rejected block " + std::to_string(b.header.height) + ": " + r.report.describe());
            return;
        }
        if (r.reorganized) log(p, "reorganized to height " + std::to_string(p.node.state().height));
        if (!r.tip_changed) {
            log(p, "kept tip; block " + std::to_string(b.header.height) + " stored on a side branch");
            return;
        }
        refresh_view(p, *before);
    }

    void refresh_view(Peer& p, const chain::ChainState& before) {
        if (!p.resolver) return;
        auto after = std::make_shared<chain::ChainState>(p.node.state());
        p.resolver->set_directory(std::make_shared<resolver::StateDirectory>(after), resolver::changed_domains(before, *after));
    }

    void register_domain() {
        auto& a = *peers_[0];
        auto text = zone_for(c_.domain);
        auto cf = zone::parse_control_file(std::string_view(text));
        auto payload = to_bytes(zone::serialize_canonical(cf));
        auto cid = content::content_id_of(payload);
        a.content->objects[cid.text()] = payload;
        auto tx = registry::register_domain(c_.domain, cid.text(), owner_, a.node.state(), params_);
        auto rep = a.node.submit_transaction(tx);
        if (!rep.ok()) throw std::runtime_error("registration rejected locally: " + rep.describe());
        honest_txid_ = tx.txid();
        result_.broadcast_time = now_;
        broadcast_done_ = true;
        log(a, "broadcasts registration of " + c_.domain + " (" + cid.text() + ")");
        for (std::size_t j = 1; j < peers_.size(); ++j) {
            double l = latency();
            at(now_ + l, 0, [this, j, tx, cid, payload] {
                auto& p = *peers_[j];
                p.content->objects[cid.text()] = payload;
                if (c_.adversary && j == adversary()) return;  // the adversary ignores it
                p.node.submit_transaction(tx);
            });
        }
        poll();
    }

    void adversary_strike() {
        if (adversary_done_) return;
        adversary_done_ = true;
        adversary_time_ = now_;
        auto& d = *peers_[adversary()];
        auto text = R"({"version":"2.0","domain":")" + c_.domain + R"(","records":{"@":{"A":[{"address":"10.66.66.66"}]}}})";
        auto payload = to_bytes(zone::serialize_canonical(zone::parse_control_file(std::string_view(text))));
        auto cid = content::content_id_of(payload);
        d.content->objects[cid.text()] = payload;
        auto rival = registry::register_domain(c_.domain, cid.text(), adversary_key_, d.node.state(), params_);
        d.node.submit_transaction(rival);
        auto block = d.node.mine(crypto::derive_address(d.key.public_key), stamp(d), 1u << 20);
        if (!block) return;
        d.node.submit_block(*block, stamp(d));
        adversary_hash_ = block->hash();
        log(d, "publishes rival block " + std::to_string(block->header.height) + " registering " + c_.domain);
        broadcast_block(adversary(), *block);
        // The adversary then rejoins the honest network.
        d.withholding = false;
        auto held = std::move(held_);
        for (const auto& b : held) deliver_block(adversary(), b);
    }

    bool gave_up() const { return broadcast_done_ && now_ > result_.broadcast_time + c_.give_up_after; }

    // Mining continues until the observer has its answer and, with an
    // adversary, a few blocks past the rival block so the fork settles.
    bool mining_over() const {
        if (gave_up()) return true;
        if (!result_.resolved_time) return false;
        return !c_.adversary || (adversary_done_ && now_ >= adversary_time_ + 3 * c_.block_interval);
    }

    void poll() {
        if (result_.resolved_time || gave_up()) return;
        auto& obs = *peers_[observer()];
        auto res = obs.resolver->resolve(c_.domain, dns::type::A);
        if (res.rcode != last_rcode_) {
            log(obs, std::string("resolve ") + c_.domain + " A -> " + dns::rcode_name(res.rcode) +
                         (res.error.empty() ? "" : " (" + res.error + ")"));
            last_rcode_ = res.rcode;
        }
        if (res.rcode == dns::Rcode::noerror && !res.answers.empty()) {
            result_.resolved_time = now_;
            result_.answer = dns::rdata_to_text(res.answers.back());
            log(obs, "answer " + result_.answer);
            return;
        }
        at(now_ + c_.poll_interval, 1, [this] { poll(); });
    }

    void finish() {
        auto honest = crypto::derive_address(owner_.public_key);
        result_.honest_owner_everywhere = true;
        for (std::size_t j = 0; j < c_.nodes; ++j) {
            auto d = registry::lookup_domain(peers_[j]->node.state(), c_.domain);
            if (!d || d->owner_address != honest) result_.honest_owner_everywhere = false;
        }
        if (adversary_hash_) {
            auto chain = peers_[0]->node.chain().active_chain();
            result_.adversary_block_orphaned =
                std::find(chain.begin(), chain.end(), *adversary_hash_) == chain.end() &&
                peers_[0]->node.chain().contains(*adversary_hash_);
        }
    }

    const EndToEndConfig& c_;
    std::mt19937_64 rng_;
    chain::ChainParams params_;
    std::vector<std::unique_ptr<Peer>> peers_;
    crypto::KeyPair owner_, adversary_key_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    std::uint64_t seq_ = 0;
    double now_ = 0, adversary_time_ = 0;
    bool broadcast_done_ = false, adversary_done_ = false;
    std::optional<Hash256> honest_txid_, adversary_hash_;
    std::vector<chain::Block> held_;
    std::vector<double> pending_latency_;
    dns::Rcode last_rcode_ = dns::Rcode::noerror;
    EndToEndResult result_;
};

}  // namespace

EndToEndResult scenario_end_to_end(const EndToEndConfig& config) { return Scenario(config).run(); }

}  // namespace ddns::sim
