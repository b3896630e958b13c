#include "ddns_cli/commands.hpp"

#include "ddns/analytics/formulas.hpp"
#include "ddns/chain/miner.hpp"
#include "ddns/dns/message.hpp"
#include "ddns/registry/asset_record.hpp"
#include "ddns/registry/builders.hpp"
#include "ddns/registry/names.hpp"
#include "ddns/resolver/server.hpp"
#include "ddns/resolver/transport.hpp"
#include "ddns/sim/simulation.hpp"
#include "ddns/zone/control_file.hpp"
#include "ddns_cli/data_dir.hpp"
#include "ddns_cli/errors.hpp"
#include "ddns_cli/keyfile.hpp"

#include <pthread.h>
#include <signal.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace ddns::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t unix_now() {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count());
}

crypto::KeyPair signing_key(const NodeConfig& c, const std::string& key) {
    if (!key.empty()) return read_key_file(key);
    if (!c.key_file.empty()) return read_key_file(c.key_file);
    throw CliError(kUsage, "no signing key: pass --key or set key_file in the config");
}

crypto::Address parse_address(const std::string& text) {
    auto a = crypto::Address::decode(text);
    if (!a) throw CliError(kInvalidInput, "not a valid address: " + text);
    return *a;
}

std::string checked_name(const std::string& name) {
    auto n = resolver::normalize_name(name);
    if (!registry::dns_to_asset(n)) throw CliError(kInvalidInput, "not a registrable domain name: " + name);
    return n;
}

// Validates and canonicalizes the control file, then stores it.
std::pair<zone::ControlFile, content::ContentId> store_zone(DataDir& d, const std::string& path,
                                                            const std::string& domain) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kInvalidInput, "cannot read zone file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    zone::ControlFile cf;
    try {
        cf = zone::parse_control_file(text);
    } catch (const zone::ControlFileError& e) {
        throw CliError(kInvalidInput, path + ": " + e.what());
    }
    if (resolver::normalize_name(cf.domain) != domain)
        throw CliError(kInvalidInput, path + ": zone is for " + cf.domain + ", not " + domain);
    auto id = d.store()->put(as_bytes(zone::serialize_canonical(cf)));
    return {std::move(cf), id};
}

registry::SpentSet pending_spends(const chain::Mempool& mp) {
    registry::SpentSet s;
    for (const auto* e : mp.ordered())
        for (const auto& in : e->tx.inputs) s.insert(in.prevout);
    return s;
}

Output submit(DataDir& d, const chain::Transaction& tx, json data, const char* verb) {
    auto report = d.node().submit_transaction(tx);
    if (!report.ok()) throw CliError(kRejected, std::string(verb) + " rejected: " + report.describe());
    d.save_mempool();
    data["txid"] = tx.txid().hex();
    data["fee"] = tx.asset_op ? tx.asset_op->fee_paid : 0;
    data["pending"] = d.node().mempool().size();
    std::ostringstream text;
    text << "txid " << tx.txid().hex() << "\n";
    if (data.contains("content_id")) text << "content_id " << data["content_id"].get<std::string>() << "\n";
    text << "pending until mined (" << d.node().mempool().size() << " in mempool)\n";
    return {std::move(data), text.str()};
}

template <class F>
chain::Transaction build(F&& f) {
    try {
        return f();
    } catch (const registry::RegistryError& e) {
        int code = e.reason() == registry::AssetReason::invalid_name || e.reason() == registry::AssetReason::invalid_address
                       ? kInvalidInput
                       : kRejected;
        throw CliError(code, std::string(registry::reason_name(e.reason())) + ": " + e.what());
    }
}

double number(const std::string& s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw CliError(kInvalidInput, "not a number: " + s);
    return v;
}

std::vector<double> number_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item));
    return out;
}

json rr_json(const dns::ResourceRecord& rr) {
    return {{"name", rr.name}, {"type", dns::type_to_text(rr.rtype)}, {"ttl", rr.ttl}, {"data", dns::rdata_to_text(rr)}};
}

std::string fmt(double v, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

std::string general(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

}  // namespace

Output cmd_keygen(const KeygenOptions& o) {
    crypto::KeyPair kp;
    if (!o.seed_hex.empty()) {
        if (o.seed_hex.size() != 64) throw CliError(kInvalidInput, "--seed takes 64 hex digits");
        Bytes seed;
        try {
            seed = from_hex(o.seed_hex);
        } catch (const std::exception&) {
            throw CliError(kInvalidInput, "--seed is not hex");
        }
        try {
            kp = crypto::generate_keypair(std::span<const std::uint8_t, 32>(seed.data(), 32));
        } catch (const crypto::CryptoError& e) {
            throw CliError(kInvalidInput, e.what());
        }
    } else {
        kp = crypto::generate_keypair();
    }
    write_key_file(o.out, kp, o.force);
    auto address = crypto::derive_address(kp.public_key).encode();
    return {{{"schema", "ddns.keygen/1"}, {"address", address}, {"public_key", to_hex(kp.public_key.view())},
             {"key_file", o.out}},
            address + "\n"};
}

Output cmd_register(const NodeConfig& c, const DomainOptions& o) {
    auto name = checked_name(o.name);
    auto key = signing_key(c, o.key);
    DataDir d(c);
    auto [cf, id] = store_zone(d, o.zone, name);
    auto tx = build([&] {
        return registry::register_domain(name, id.text(), key, d.node().state(), d.node().params(),
                                         pending_spends(d.node().mempool()));
    });
    return submit(d, tx,
                  {{"schema", "ddns.register/1"}, {"name", name}, {"asset_name", *registry::dns_to_asset(name)},
                   {"content_id", id.text()}},
                  "registration");
}

Output cmd_update(const NodeConfig& c, const DomainOptions& o) {
    auto name = checked_name(o.name);
    auto key = signing_key(c, o.key);
    DataDir d(c);
    auto [cf, id] = store_zone(d, o.zone, name);
    auto tx = build([&] {
        return registry::update_domain(name, id.text(), key, d.node().state(), d.node().params(),
                                       pending_spends(d.node().mempool()));
    });
    return submit(d, tx,
                  {{"schema", "ddns.update/1"}, {"name", name}, {"asset_name", *registry::dns_to_asset(name)},
                   {"content_id", id.text()}},
                  "update");
}

Output cmd_transfer(const NodeConfig& c, const DomainOptions& o) {
    auto name = checked_name(o.name);
    auto to = parse_address(o.to);
    auto key = signing_key(c, o.key);
    DataDir d(c);
    auto tx = build([&] {
        return registry::transfer_domain(name, to, key, d.node().state(), d.node().params(),
                                         pending_spends(d.node().mempool()));
    });
    return submit(d, tx,
                  {{"schema", "ddns.transfer/1"}, {"name", name}, {"asset_name", *registry::dns_to_asset(name)},
                   {"new_owner", to.encode()}},
                  "transfer");
}

Output cmd_whois(const NodeConfig& c, const std::string& raw) {
    auto name = checked_name(raw);
    DataDir d(c);
    auto asset = registry::lookup_domain(d.node().state(), name);
    if (!asset) throw CliError(kNotFound, name + " is not registered");
    auto record = json::parse(registry::AssetRecord::from_asset(*asset).canonical_json());
    json data{{"schema", "ddns.whois/1"},
              {"name", name},
              {"asset", record},
              {"updated_height", asset->updated_height},
              {"receipt", asset->receipt.txid.hex() + ":" + std::to_string(asset->receipt.index)}};
    return {data, record.dump(2) + "\n"};
}

Output cmd_info(const NodeConfig& c) {
    DataDir d(c);
    const auto& chain = d.node().chain();
    json data{{"schema", "ddns.info/1"},
              {"height", chain.height()},
              {"tip", chain.tip().hex()},
              {"blocks", chain.block_count()},
              {"orphans", chain.orphan_count()},
              {"mempool", d.node().mempool().size()},
              {"domains", d.node().state().assets.size()},
              {"objects", d.store()->object_count()},
              {"genesis", to_json(d.config().genesis)}};
    std::ostringstream text;
    text << "height " << chain.height() << "\ntip " << chain.tip().hex() << "\ndomains "
         << d.node().state().assets.size() << "\nmempool " << d.node().mempool().size() << "\n";
    return {data, text.str()};
}

namespace {

crypto::Address coinbase_address(const NodeConfig& c, const std::string& to, const std::string& key) {
    if (!to.empty()) return parse_address(to);
    if (!key.empty()) return crypto::derive_address(read_key_file(key).public_key);
    if (!c.key_file.empty()) return crypto::derive_address(read_key_file(c.key_file).public_key);
    return crypto::Address{};  // unspendable
}

// One block on the current tip. `stop` allows an early exit between
// hash batches.
std::optional<chain::Block> mine_one(chain::Node& node, const crypto::Address& to, const std::atomic<bool>* stop) {
    auto now = unix_now();
    chain::MiningJob job{chain::build_template(node.state(), node.mempool(), to, now, node.params())};
    while (!chain::mine_step(job, 1 << 16))
        if (stop && *stop) return std::nullopt;
    auto r = node.submit_block(job.block, now);
    if (!r.report.ok()) throw CliError(kInternal, "mined block rejected: " + r.report.describe());
    return job.block;
}

json block_json(const chain::Block& b) {
    return {{"height", b.header.height},
            {"hash", b.hash().hex()},
            {"transactions", b.transactions.size()},
            {"timestamp", b.header.timestamp}};
}

}  // namespace

Output cmd_mine(const NodeConfig& c, const MineOptions& o) {
    auto to = coinbase_address(c, o.to, o.key);
    DataDir d(c);
    json blocks = json::array();
    std::ostringstream text;
    for (std::uint64_t i = 0; i < o.blocks; ++i) {
        auto b = mine_one(d.node(), to, nullptr);
        blocks.push_back(block_json(*b));
        text << "block " << b->header.height << " " << b->hash().hex() << " (" << b->transactions.size() << " tx)\n";
    }
    d.save_mempool();
    return {{{"schema", "ddns.mine/1"}, {"blocks", blocks}, {"height", d.node().chain().height()},
             {"mempool", d.node().mempool().size()}},
            text.str()};
}

Output cmd_resolve(const NodeConfig& c, const ResolveOptions& o) {
    auto qtype = dns::type_from_text(o.qtype);
    if (!qtype) throw CliError(kInvalidInput, "unknown record type " + o.qtype);
    std::random_device rd;
    auto id = static_cast<std::uint16_t>(rd());
    auto query = dns::make_query(o.qname, *qtype, id);
    Bytes wire;
    try {
        wire = dns::encode_message(query);
    } catch (const dns::WireError& e) {
        throw CliError(kInvalidInput, "bad query name: " + e.reason);
    }

    Bytes reply;
    double elapsed_ms = 0;
    if (o.server.empty()) {
        DataDir d(c);
        auto res = d.make_resolver(d.config().resolver);
        auto t0 = std::chrono::steady_clock::now();
        reply = res->handle(wire, dns::kMaxMessageSize);
        elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    } else {
        if (!resolver::parse_endpoint(o.server)) throw CliError(kInvalidInput, "--server takes IPv4[:port]");
        auto t0 = std::chrono::steady_clock::now();
        auto r = resolver::udp_exchange(o.server, wire, o.timeout_ms, o.retries);
        elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (!r) throw CliError(kNetwork, "no reply from " + o.server);
        reply = std::move(*r);
    }

    dns::Message m;
    try {
        m = dns::decode_message(reply);
    } catch (const dns::WireError& e) {
        throw CliError(kDnsFailure, std::string("malformed reply: ") + e.what());
    }
    if (m.header.id != id) throw CliError(kDnsFailure, "reply id does not match the query");

    json answers = json::array(), authority = json::array();
    std::ostringstream text;
    text << ";; " << dns::rcode_name(m.header.rcode) << (m.header.aa ? " aa" : "") << (m.header.tc ? " tc" : "")
         << (m.header.ra ? " ra" : "") << "\n";
    auto line = [&](const dns::ResourceRecord& rr) {
        text << rr.name << ".\t" << rr.ttl << "\tIN\t" << dns::type_to_text(rr.rtype) << "\t" << dns::rdata_to_text(rr)
             << "\n";
    };
    for (const auto& rr : m.answers) {
        answers.push_back(rr_json(rr));
        line(rr);
    }
    if (!m.authority.empty()) text << ";; authority\n";
    for (const auto& rr : m.authority) {
        authority.push_back(rr_json(rr));
        line(rr);
    }
    auto via = o.server.empty() ? std::string("local") : o.server;
    text << ";; " << fmt(elapsed_ms, 3) << " ms via " << via << "\n";

    int code = kOk;
    if (m.header.rcode == dns::Rcode::nxdomain) code = kNotFound;
    else if (m.header.rcode != dns::Rcode::noerror) code = kDnsFailure;
    json data{{"schema", "ddns.resolve/1"},
              {"qname", o.qname},
              {"qtype", dns::type_to_text(*qtype)},
              {"rcode", dns::rcode_name(m.header.rcode)},
              {"flags", {{"aa", m.header.aa}, {"tc", m.header.tc}, {"rd", m.header.rd}, {"ra", m.header.ra}}},
              {"answers", answers},
              {"authority", authority},
              {"elapsed_ms", elapsed_ms},
              {"via", via}};
    return {data, text.str(), code};
}

int cmd_serve(const NodeConfig& c, const ServeOptions& o, const std::function<void(const Output&)>& emit) {
    // Signals are taken synchronously by this thread; block them before any
    // worker exists so every thread inherits the mask.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto to = coinbase_address(c, o.to, o.key);
    DataDir d(c);
    auto rc = d.config().resolver;
    if (o.udp_port) rc.udp_port = *o.udp_port;
    if (o.doh_port) rc.doh_port = *o.doh_port;
    auto res = d.make_resolver(rc);

    resolver::UdpServer udp(*res, rc.udp_bind, rc.udp_port, o.workers);
    resolver::DohServer doh(*res, rc.doh_bind, rc.doh_port);
    try {
        udp.start();
        doh.start();
    } catch (const std::exception& e) {
        throw CliError(kNetwork, e.what());
    }
    emit({{{"schema", "ddns.serve/1"},
           {"event", "ready"},
           {"udp", rc.udp_bind + ":" + std::to_string(udp.port())},
           {"doh", rc.doh_bind + ":" + std::to_string(doh.port())},
           {"height", d.node().chain().height()},
           {"restored_transactions", d.restored_transactions()}},
          "listening udp " + rc.udp_bind + ":" + std::to_string(udp.port()) + " doh " + rc.doh_bind + ":" +
              std::to_string(doh.port()) + " height " + std::to_string(d.node().chain().height()) + "\n"});

    std::atomic<bool> stop{false};
    std::uint64_t mined = 0;
    std::thread miner;
    if (o.mine_interval > 0) {
        miner = std::thread([&] {
            auto interval = std::chrono::duration<double>(o.mine_interval);
            auto next = std::chrono::steady_clock::now() + interval;
            while (!stop) {
                if (std::chrono::steady_clock::now() < next) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(20));
                    continue;
                }
                auto before = d.node().state();
                auto b = mine_one(d.node(), to, &stop);
                if (!b) break;
                ++mined;
                res->set_directory(d.directory(), resolver::changed_domains(before, d.node().state()));
                d.record_cache_view(rc);
                d.save_mempool();
                auto ev = block_json(*b);
                ev["schema"] = "ddns.serve/1";
                ev["event"] = "block";
                emit({ev, "block " + std::to_string(b->header.height) + " " + b->hash().hex() + "\n"});
                next += std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval);
            }
        });
    }

    auto start = std::chrono::steady_clock::now();
    int signal_number = 0;
    for (;;) {
        timespec wait{0, 100'000'000};
        int s = sigtimedwait(&signals, nullptr, &wait);
        if (s > 0) {
            signal_number = s;
            break;
        }
        if (o.duration > 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= o.duration)
            break;
    }

    stop = true;
    if (miner.joinable()) miner.join();
    // Front ends finish the requests they are serving before returning.
    udp.stop();
    doh.stop();
    d.save_mempool();
    auto k = res->counters();
    emit({{{"schema", "ddns.serve/1"},
           {"event", "stopped"},
           {"signal", signal_number},
           {"blocks_mined", mined},
           {"height", d.node().chain().height()},
           {"queries", k.queries},
           {"l1_hits", k.l1_hits},
           {"l2_hits", k.l2_hits},
           {"servfail", k.servfail}},
          "stopped after " + std::to_string(k.queries) + " queries, height " +
              std::to_string(d.node().chain().height()) + "\n"});
    return kOk;
}

Output cmd_sim(const SimOptions& o) {
    if (o.scenario == "network") {
        sim::SimConfig sc;
        if (!o.config.empty()) {
            std::ifstream in(o.config);
            if (!in) throw CliError(kConfig, "cannot read " + o.config);
            try {
                sc = sim::sim_config_from_json(json::parse(in));
            } catch (const json::exception& e) {
                throw CliError(kConfig, o.config + ": " + e.what());
            } catch (const std::invalid_argument& e) {
                throw CliError(kConfig, o.config + ": " + e.what());
            }
        }
        if (o.seed) sc.seed = *o.seed;
        if (o.series) sc.record_series = true;
        try {
            sim::validate(sc);
        } catch (const std::invalid_argument& e) {
            throw CliError(kConfig, e.what());
        }
        auto r = sim::run_simulation(sc);
        auto data = sim::to_json(r);
        data["schema"] = "ddns.sim/1";
        data["config"] = sim::to_json(sc);
        std::ostringstream text;
        text << "blocks " << r.total_blocks << " canonical " << r.canonical_blocks << " orphaned "
             << r.orphaned_blocks << "\norphan rate " << general(r.orphan_rate) << "\nmean interval "
             << fmt(r.mean_interval, 2) << " s (sd " << fmt(r.stddev_interval, 2) << ")\nachieved tps "
             << fmt(r.achieved_tps, 2) << "\n";
        return {data, text.str()};
    }
    if (o.scenario != "end-to-end") throw CliError(kUsage, "unknown scenario " + o.scenario);
    if (!o.config.empty()) throw CliError(kUsage, "the end-to-end scenario takes no --config");
    if (o.trials == 0) throw CliError(kUsage, "--trials must be positive");

    sim::EndToEndConfig ec;
    ec.adversary = o.adversary;
    ec.poisson = o.poisson;
    auto first = o.seed.value_or(1);
    std::uint64_t within = 0, resolved = 0;
    double worst = 0, total = 0;
    json last;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        ec.seed = first + t;
        auto r = sim::scenario_end_to_end(ec);
        if (auto e = r.elapsed()) {
            ++resolved;
            total += *e;
            worst = std::max(worst, *e);
            if (*e <= 2 * ec.block_interval) ++within;
        }
        if (o.trials == 1) last = sim::to_json(r);
    }
    json data{{"schema", "ddns.sim.end_to_end/1"},
              {"trials", o.trials},
              {"first_seed", first},
              {"resolved", resolved},
              {"within_two_intervals", within},
              {"fraction_within", static_cast<double>(within) / static_cast<double>(o.trials)},
              {"mean_elapsed", resolved ? total / static_cast<double>(resolved) : 0.0},
              {"max_elapsed", worst},
              {"cadence", o.poisson ? "poisson" : "scripted"}};
    if (!last.is_null()) data["result"] = last;
    std::ostringstream text;
    text << "resolved " << resolved << "/" << o.trials << ", within " << fmt(2 * ec.block_interval, 0) << " s: "
         << within << "/" << o.trials << "\nmean " << fmt(resolved ? total / resolved : 0.0, 2) << " s, max "
         << fmt(worst, 2) << " s\n";
    return {data, text.str()};
}

Output cmd_analyze(const std::string& formula, const std::vector<std::string>& args) {
    auto want = [&](std::size_t n, const char* usage) {
        if (args.size() != n) throw CliError(kUsage, std::string("usage: analyze ") + usage);
    };
    json data{{"schema", "ddns.analyze/1"}, {"formula", formula}};
    try {
        if (formula == "tps") {
            want(3, "tps BLOCK_WEIGHT_LIMIT TX_WEIGHT BLOCK_TIME");
            double v = analytics::theoretical_tps({number(args[0]), number(args[1]), number(args[2])});
            data["value"] = v;
            return {data, fmt(v, 1) + "\n"};
        }
        if (formula == "tps-table") {
            if (!args.empty()) want(2, "tps-table [BLOCK_WEIGHT_LIMIT BLOCK_TIME]");
            auto rows = args.empty() ? analytics::throughput_table()
                                     : analytics::throughput_table(number(args[0]), number(args[1]));
            json rj = json::array();
            for (const auto& r : rows) rj.push_back({{"transaction_type", r.transaction_type}, {"weight", r.weight}, {"tps", r.tps}});
            data["rows"] = rj;
            return {data, analytics::format_throughput_table(rows)};
        }
        if (formula == "failure") {
            std::vector<double> p;
            for (const auto& a : args) p.push_back(number(a));
            double v = analytics::failure_probability(p);
            data["value"] = v;
            return {data, general(v) + "\n"};
        }
        if (formula == "attack") {
            want(3, "attack GAIN REWARD,REWARD,... ELECTRICITY,ELECTRICITY,...");
            auto r = number_list(args[1]);
            auto e = number_list(args[2]);
            auto a = analytics::attack_cost_exceeds_gain(r, e, number(args[0]));
            data["cost_exceeds_gain"] = a.cost_exceeds_gain;
            data["attack_cost"] = a.attack_cost;
            data["margin"] = a.margin;
            return {data, std::string(a.cost_exceeds_gain ? "secure" : "not secure") + " cost " + general(a.attack_cost) +
                              " margin " + general(a.margin) + "\n"};
        }
        if (formula == "cost") {
            want(4, "cost traditional|ddns REGISTRATION_FEE ANNUAL_FEE YEARS");
            analytics::CostKind kind;
            if (args[0] == "traditional") kind = analytics::CostKind::traditional;
            else if (args[0] == "ddns") kind = analytics::CostKind::ddns;
            else throw CliError(kUsage, "cost kind is traditional or ddns");
            double years = number(args[3]);
            if (years != std::floor(years)) throw CliError(kInvalidInput, "YEARS must be a whole number");
            double v = analytics::cost_over_time(kind, {number(args[1]), number(args[2]), static_cast<std::int64_t>(years)});
            data["value"] = v;
            return {data, general(v) + "\n"};
        }
        if (formula == "crossover") {
            want(3, "crossover REGISTRATION_FEE ANNUAL_FEE DDNS_FEE");
            auto y = analytics::cost_crossover_year({number(args[0]), number(args[1]), 0}, number(args[2]));
            data["year"] = y;
            return {data, (y < 0 ? std::string("never") : std::to_string(y)) + "\n"};
        }
        if (formula == "network-value") {
            want(3, "network-value USERS K ALPHA");
            double v = analytics::network_value(number(args[0]), number(args[1]), number(args[2]));
            data["value"] = v;
            return {data, general(v) + "\n"};
        }
    } catch (const std::domain_error& e) {
        throw CliError(kInvalidInput, e.what());
    }
    throw CliError(kUsage, "unknown formula " + formula +
                               " (tps, tps-table, failure, attack, cost, crossover, network-value)");
}

}  // namespace ddns::cli
