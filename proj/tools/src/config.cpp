#include "ddns_cli/config.hpp"

#include "ddns/resolver/transport.hpp"
#include "ddns_cli/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ddns::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Problems {
public:
    void add(std::string p) { list_.push_back(std::move(p)); }

    void unknown_keys(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
        std::set<std::string> ok(known.begin(), known.end());
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!ok.count(it.key())) add(where + it.key() + ": unknown field");
    }

    // Reads obj[key] into out when present; type mismatches are recorded.
    template <class T>
    void get(const json& obj, const std::string& where, const char* key, T& out) {
        auto it = obj.find(key);
        if (it == obj.end()) return;
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            add(where + key + ": wrong type");
        }
    }

    void raise() const {
        if (list_.empty()) return;
        std::ostringstream os;
        os << "invalid configuration (" << list_.size() << (list_.size() == 1 ? " problem)" : " problems)");
        for (const auto& p : list_) os << "\n  " << p;
        throw CliError(kConfig, os.str());
    }

private:
    std::vector<std::string> list_;
};

fs::path resolve(const fs::path& p, const fs::path& base) {
    if (p.empty() || p.is_absolute()) return p;
    return base / p;
}

}  // namespace

NodeConfig config_from_json(const json& j, const fs::path& base) {
    Problems pr;
    NodeConfig c;
    if (!j.is_object()) {
        pr.add("top level: expected an object");
        pr.raise();
    }
    pr.unknown_keys(j, "", {"data_dir", "store_dir", "key_file", "genesis", "resolver"});
    std::string data_dir = c.data_dir.string(), store_dir, key_file;
    pr.get(j, "", "data_dir", data_dir);
    pr.get(j, "", "store_dir", store_dir);
    pr.get(j, "", "key_file", key_file);
    c.data_dir = resolve(data_dir, base);
    c.store_dir = resolve(store_dir, base);
    c.key_file = resolve(key_file, base);

    if (auto g = j.find("genesis"); g != j.end()) {
        if (!g->is_object()) {
            pr.add("genesis: expected an object");
        } else {
            pr.unknown_keys(*g, "genesis.", {"profile", "timestamp"});
            pr.get(*g, "genesis.", "profile", c.genesis.profile);
            pr.get(*g, "genesis.", "timestamp", c.genesis.timestamp);
            if (c.genesis.profile != "fixed" && c.genesis.profile != "desk" && c.genesis.profile != "trivial")
                pr.add("genesis.profile: expected fixed, desk or trivial");
        }
    }

    if (auto r = j.find("resolver"); r != j.end()) {
        if (!r->is_object()) {
            pr.add("resolver: expected an object");
        } else {
            auto& rc = c.resolver;
            const std::string w = "resolver.";
            pr.unknown_keys(*r, w,
                            {"managed_tlds", "upstream", "udp_bind", "udp_port", "doh_bind", "doh_port", "cache_dir",
                             "l1_capacity", "l1_ttl", "l3_ttl", "negative_ttl", "chase_limit", "invalidate_on_update",
                             "upstream_timeout_ms", "upstream_retries"});
            pr.get(*r, w, "managed_tlds", rc.managed_tlds);
            std::string upstream;
            pr.get(*r, w, "upstream", upstream);
            if (!upstream.empty()) {
                if (!resolver::parse_endpoint(upstream)) pr.add(w + "upstream: expected IPv4[:port]");
                rc.upstream = upstream;
            }
            pr.get(*r, w, "udp_bind", rc.udp_bind);
            pr.get(*r, w, "udp_port", rc.udp_port);
            pr.get(*r, w, "doh_bind", rc.doh_bind);
            pr.get(*r, w, "doh_port", rc.doh_port);
            std::string cache_dir;
            pr.get(*r, w, "cache_dir", cache_dir);
            rc.cache_dir = resolve(cache_dir, base);
            pr.get(*r, w, "l1_capacity", rc.l1_capacity);
            pr.get(*r, w, "l1_ttl", rc.l1_ttl);
            pr.get(*r, w, "l3_ttl", rc.l3_ttl);
            pr.get(*r, w, "negative_ttl", rc.negative_ttl);
            pr.get(*r, w, "chase_limit", rc.chase_limit);
            pr.get(*r, w, "invalidate_on_update", rc.invalidate_on_update);
            pr.get(*r, w, "upstream_timeout_ms", rc.upstream_timeout_ms);
            pr.get(*r, w, "upstream_retries", rc.upstream_retries);
            if (rc.managed_tlds.empty()) pr.add(w + "managed_tlds: must not be empty");
            if (!resolver::parse_endpoint(rc.udp_bind)) pr.add(w + "udp_bind: expected an IPv4 address");
            if (!resolver::parse_endpoint(rc.doh_bind)) pr.add(w + "doh_bind: expected an IPv4 address");
            if (rc.l1_capacity == 0) pr.add(w + "l1_capacity: must be positive");
            if (!(rc.l1_ttl > 0)) pr.add(w + "l1_ttl: must be positive");
            if (!(rc.l3_ttl > 0)) pr.add(w + "l3_ttl: must be positive");
            if (!(rc.negative_ttl >= 0)) pr.add(w + "negative_ttl: must not be negative");
            if (rc.chase_limit == 0) pr.add(w + "chase_limit: must be positive");
            if (rc.upstream_timeout_ms <= 0) pr.add(w + "upstream_timeout_ms: must be positive");
            if (rc.upstream_retries < 0) pr.add(w + "upstream_retries: must not be negative");
        }
    }
    if (c.data_dir.empty()) pr.add("data_dir: must not be empty");
    pr.raise();
    return c;
}

NodeConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw CliError(kConfig, "cannot read config file " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CliError(kConfig, file.string() + ": " + e.what());
    }
    return config_from_json(j, fs::absolute(file).parent_path());
}

json to_json(const GenesisConfig& g) { return {{"profile", g.profile}, {"timestamp", g.timestamp}}; }

json to_json(const NodeConfig& c) {
    const auto& r = c.resolver;
    return {{"data_dir", c.data_dir.string()},
            {"store_dir", c.store_dir.string()},
            {"key_file", c.key_file.string()},
            {"genesis", to_json(c.genesis)},
            {"resolver",
             {{"managed_tlds", r.managed_tlds},
              {"upstream", r.upstream.value_or("")},
              {"udp_bind", r.udp_bind},
              {"udp_port", r.udp_port},
              {"doh_bind", r.doh_bind},
              {"doh_port", r.doh_port},
              {"cache_dir", r.cache_dir.string()},
              {"l1_capacity", r.l1_capacity},
              {"l1_ttl", r.l1_ttl},
              {"l3_ttl", r.l3_ttl},
              {"negative_ttl", r.negative_ttl},
              {"chase_limit", r.chase_limit},
              {"invalidate_on_update", r.invalidate_on_update},
              {"upstream_timeout_ms", r.upstream_timeout_ms},
              {"upstream_retries", r.upstream_retries}}}};
}

void finalize(NodeConfig& c) {
    if (c.store_dir.empty()) c.store_dir = c.data_dir / "store";
    if (c.resolver.cache_dir.empty()) c.resolver.cache_dir = c.data_dir / "cache";
}

chain::ChainParams chain_params(const GenesisConfig& g) {
    chain::ChainParams p;
    if (g.profile == "trivial") {
        p = chain::ChainParams::trivial();
    } else {
        p = chain::ChainParams::desk();
        // Back-to-back desk mining would otherwise ratchet the target up
        // every block.
        if (g.profile == "fixed") p.retarget = false;
    }
    p.genesis_timestamp = g.timestamp;
    return p;
}

}  // namespace ddns::cli
