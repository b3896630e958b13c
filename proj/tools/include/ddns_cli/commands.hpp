#pragma once

#include "ddns_cli/config.hpp"

#include <json.hpp>

#include <functional>
#include <optional>

namespace ddns::cli {

/// What a subcommand reports: `data` in --json mode (always carrying a
/// "schema" field), `text` otherwise.
struct Output {
    nlohmann::json data;
    std::string text;
    int code = 0;
};

struct KeygenOptions {
    std::string seed_hex;
    std::string out;
    bool force = false;
};
Output cmd_keygen(const KeygenOptions& o);

struct DomainOptions {
    std::string name;
    std::string zone;     // register, update
    std::string to;       // transfer
    std::string key;      // falls back to the configured key file
};
Output cmd_register(const NodeConfig& c, const DomainOptions& o);
Output cmd_update(const NodeConfig& c, const DomainOptions& o);
Output cmd_transfer(const NodeConfig& c, const DomainOptions& o);
Output cmd_whois(const NodeConfig& c, const std::string& name);
Output cmd_info(const NodeConfig& c);

struct MineOptions {
    std::uint64_t blocks = 1;
    std::string to;   // coinbase address
    std::string key;  // or the address of this key
};
Output cmd_mine(const NodeConfig& c, const MineOptions& o);

struct ResolveOptions {
    std::string qname;
    std::string qtype = "A";
    std::string server;  // empty: resolve in-process against the data directory
    int timeout_ms = 2000;
    int retries = 1;
};
Output cmd_resolve(const NodeConfig& c, const ResolveOptions& o);

struct ServeOptions {
    std::optional<std::uint16_t> udp_port, doh_port;
    double mine_interval = 0;  // seconds between blocks; 0 disables the miner
    std::string to, key;
    double duration = 0;       // 0: until SIGINT or SIGTERM
    unsigned workers = 4;
};
/// Emits newline-delimited events through `emit` as they happen.
int cmd_serve(const NodeConfig& c, const ServeOptions& o, const std::function<void(const Output&)>& emit);

struct SimOptions {
    std::string config;
    std::string scenario = "network";  // network | end-to-end
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 1;
    bool adversary = false;
    bool poisson = false;
    bool series = false;
};
Output cmd_sim(const SimOptions& o);

Output cmd_analyze(const std::string& formula, const std::vector<std::string>& args);

}  // namespace ddns::cli
