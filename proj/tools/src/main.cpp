#include "ddns_cli/commands.hpp"
#include "ddns_cli/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <mutex>

using namespace ddns::cli;

namespace {

void print(const Output& out, bool json) {
    if (json) std::cout << out.data.dump() << std::endl;
    else std::cout << out.text << std::flush;
}

int fail(int code, const std::string& message, bool json) {
    if (json) {
        nlohmann::json j{{"schema", "ddns.error/1"},
                         {"error", {{"code", code}, {"class", exit_class(code)}, {"message", message}}}};
        std::cout << j.dump() << std::endl;
    } else {
        std::cerr << "ddns: " << message << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized DNS: node, resolver, simulator and formula tools", "ddns"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    std::string config_path, data_dir;
    app.add_flag("--json", json, "One JSON object per result on stdout");
    app.add_option("--config", config_path, "Node configuration file (JSON)");
    app.add_option("--data-dir", data_dir, "Node data directory (overrides the config)");

    std::function<int(const NodeConfig&)> action;

    KeygenOptions keygen;
    auto* kg = app.add_subcommand("keygen", "Create a key file and print its address");
    kg->add_option("--seed", keygen.seed_hex, "32-byte seed as hex, for reproducible keys");
    kg->add_option("--out", keygen.out, "Key file to create")->required();
    kg->add_flag("--force", keygen.force, "Overwrite an existing file");
    kg->callback([&] { action = [&](const NodeConfig&) { return print(cmd_keygen(keygen), json), kOk; }; });

    DomainOptions reg;
    auto* rg = app.add_subcommand("register", "Store a control file and submit a registration");
    rg->add_option("name", reg.name, "Domain, e.g. example.ddns")->required();
    rg->add_option("--zone", reg.zone, "Control file (JSON)")->required();
    rg->add_option("--key", reg.key, "Owner key file");
    rg->callback([&] { action = [&](const NodeConfig& c) { return print(cmd_register(c, reg), json), kOk; }; });

    DomainOptions upd;
    auto* up = app.add_subcommand("update", "Point an owned domain at a new control file");
    up->add_option("name", upd.name)->required();
    up->add_option("--zone", upd.zone, "Control file (JSON)")->required();
    up->add_option("--key", upd.key, "Owner key file");
    up->callback([&] { action = [&](const NodeConfig& c) { return print(cmd_update(c, upd), json), kOk; }; });

    DomainOptions xfer;
    auto* tr = app.add_subcommand("transfer", "Hand an owned domain to another address");
    tr->add_option("name", xfer.name)->required();
    tr->add_option("--to", xfer.to, "Recipient address")->required();
    tr->add_option("--key", xfer.key, "Owner key file");
    tr->callback([&] { action = [&](const NodeConfig& c) { return print(cmd_transfer(c, xfer), json), kOk; }; });

    std::string whois_name;
    auto* wh = app.add_subcommand("whois", "Show the on-chain record of a domain");
    wh->add_option("name", whois_name)->required();
    wh->callback([&] { action = [&](const NodeConfig& c) { return print(cmd_whois(c, whois_name), json), kOk; }; });

    auto* inf = app.add_subcommand("info", "Chain height, tip and counts");
    inf->callback([&] { action = [&](const NodeConfig& c) { return print(cmd_info(c), json), kOk; }; });

    MineOptions mine;
    auto* mn = app.add_subcommand("mine", "Mine blocks on the local chain");
    mn->add_option("--blocks", mine.blocks, "Number of blocks")->check(CLI::PositiveNumber);
    mn->add_option("--to", mine.to, "Coinbase address");
    mn->add_option("--key", mine.key, "Pay the coinbase to this key's address");
    mn->callback([&] { action = [&](const NodeConfig& c) { return print(cmd_mine(c, mine), json), kOk; }; });

    ResolveOptions resolve;
    auto* rs = app.add_subcommand("resolve", "Send a DNS query and print the answer");
    rs->add_option("qname", resolve.qname)->required();
    rs->add_option("qtype", resolve.qtype, "Record type (default A)");
    rs->add_option("--server", resolve.server, "IPv4[:port] to query over UDP; default resolves in-process");
    rs->add_option("--timeout-ms", resolve.timeout_ms)->check(CLI::PositiveNumber);
    rs->add_option("--retries", resolve.retries)->check(CLI::NonNegativeNumber);
    rs->callback([&] {
        action = [&](const NodeConfig& c) {
            auto out = cmd_resolve(c, resolve);
            print(out, json);
            return out.code;
        };
    });

    ServeOptions serve;
    auto* sv = app.add_subcommand("serve", "Run the node with UDP and DoH front ends");
    sv->add_option("--udp-port", serve.udp_port, "0 picks a free port");
    sv->add_option("--doh-port", serve.doh_port, "0 picks a free port");
    sv->add_option("--mine-interval", serve.mine_interval, "Seconds between mined blocks; 0 disables mining")
        ->check(CLI::NonNegativeNumber);
    sv->add_option("--to", serve.to, "Coinbase address");
    sv->add_option("--key", serve.key, "Pay the coinbase to this key's address");
    sv->add_option("--duration", serve.duration, "Stop after this many seconds")->check(CLI::NonNegativeNumber);
    sv->add_option("--workers", serve.workers, "UDP worker threads")->check(CLI::PositiveNumber);
    sv->callback([&] {
        action = [&](const NodeConfig& c) {
            std::mutex mu;
            return cmd_serve(c, serve, [&](const Output& o) {
                std::lock_guard lock(mu);
                print(o, json);
            });
        };
    });

    SimOptions sim;
    auto* sm = app.add_subcommand("sim", "Run the network simulator");
    sm->add_option("--config", sim.config, "Simulation config (JSON)");
    sm->add_option("--scenario", sim.scenario, "network or end-to-end")
        ->check(CLI::IsMember({"network", "end-to-end"}));
    sm->add_option("--seed", sim.seed);
    sm->add_option("--trials", sim.trials, "end-to-end: number of seeds to run");
    sm->add_flag("--adversary", sim.adversary, "end-to-end: add a racing adversary");
    sm->add_flag("--poisson", sim.poisson, "end-to-end: exponential block gaps");
    sm->add_flag("--series", sim.series, "network: include the canonical time series");
    sm->callback([&] { action = [&](const NodeConfig&) { return print(cmd_sim(sim), json), kOk; }; });

    std::string formula;
    std::vector<std::string> formula_args;
    auto* an = app.add_subcommand("analyze", "Evaluate an analytical formula");
    an->add_option("formula", formula, "tps, tps-table, failure, attack, cost, crossover, network-value")->required();
    an->add_option("args", formula_args, "Formula arguments");
    an->positionals_at_end();
    an->callback([&] { action = [&](const NodeConfig&) { return print(cmd_analyze(formula, formula_args), json), kOk; }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kUsage, e.what(), json);
    }

    try {
        NodeConfig config;
        if (!config_path.empty()) config = load_config(config_path);
        if (!data_dir.empty()) config.data_dir = data_dir;
        return action(config);
    } catch (const CliError& e) {
        return fail(e.code(), e.what(), json);
    } catch (const std::exception& e) {
        return fail(kInternal, e.what(), json);
    }
}
