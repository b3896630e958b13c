#pragma once

#include "ddns/chain/state.hpp"
#include "ddns/content/content_id.hpp"
#include "ddns/content/store.hpp"
#include "ddns/resolver/cache.hpp"
#include "ddns/zone/control_file.hpp"

#include <atomic>
#include <memory>
#include <set>

namespace ddns::resolver {

struct ResolverConfig {
    std::set<std::string> managed_tlds{"ddns", "phi"};
    /// "host:port" of a plain-DNS upstream; unset means REFUSED for other TLDs.
    std::optional<std::string> upstream;
    std::string udp_bind = "127.0.0.1";
    std::uint16_t udp_port = 5353;
    std::string doh_bind = "127.0.0.1";
    std::uint16_t doh_port = 8053;
    std::filesystem::path cache_dir;  // empty: no L2
    std::size_t l1_capacity = 50000;
    double l1_ttl = 15;
    double l3_ttl = 60;
    double negative_ttl = 15;
    unsigned chase_limit = 8;
    /// Invalidate cached answers when a domain changes on chain; otherwise
    /// rely on TTL expiry alone.
    bool invalidate_on_update = true;
    int upstream_timeout_ms = 2000;
    int upstream_retries = 1;
};

/// On-chain view: registered domain lookups by asset name.
class DomainDirectory {
public:
    virtual ~DomainDirectory() = default;
    virtual std::optional<DomainBinding> find(const std::string& asset_name) const = 0;
};

/// Directory over an immutable chain state snapshot.
class StateDirectory : public DomainDirectory {
public:
    explicit StateDirectory(std::shared_ptr<const chain::ChainState> state) : state_(std::move(state)) {}
    std::optional<DomainBinding> find(const std::string& asset_name) const override;
    const chain::ChainState& state() const { return *state_; }

private:
    std::shared_ptr<const chain::ChainState> state_;
};

/// DNS names whose binding differs between two states.
std::vector<std::string> changed_domains(const chain::ChainState& before, const chain::ChainState& after);

/// Raw payload fetch; the resolver re-verifies every payload against its id.
class ContentSource {
public:
    virtual ~ContentSource() = default;
    /// Throws content::StoreError.
    virtual Bytes fetch(const content::ContentId& id) = 0;
};

class StoreSource : public ContentSource {
public:
    explicit StoreSource(std::shared_ptr<content::ContentStore> store) : store_(std::move(store)) {}
    Bytes fetch(const content::ContentId& id) override;

private:
    std::shared_ptr<content::ContentStore> store_;
};

enum class Tier { none, l1, l2, chain, upstream };
const char* tier_name(Tier t);

struct Resolution {
    dns::Rcode rcode = dns::Rcode::noerror;
    std::vector<dns::ResourceRecord> answers, authority;
    bool authoritative = false;
    bool forward = false;  // outside the managed TLDs and an upstream exists
    Tier tier = Tier::none;
    std::vector<std::string> content_ids;
    std::string error;  // SERVFAIL cause
};

struct CounterSnapshot {
    std::uint64_t queries = 0, l1_hits = 0, l2_hits = 0, l3_hits = 0, chain_reads = 0, store_reads = 0,
                  l2_file_reads = 0, servfail = 0, nxdomain = 0, integrity_failures = 0, forwarded = 0, refused = 0;
};

using Forwarder = std::function<std::optional<Bytes>(ByteView query)>;

/// The resolution core shared by the UDP and DoH front ends. Thread-safe.
class Resolver {
public:
    Resolver(ResolverConfig config, std::shared_ptr<const DomainDirectory> directory,
             std::shared_ptr<ContentSource> content, Clock clock = system_clock());

    Resolution resolve(std::string_view qname, std::uint16_t qtype);

    /// Full request handling on wire bytes: FORMERR/NOTIMP/REFUSED,
    /// forwarding and truncation to `limit`. Empty result: no reply.
    Bytes handle(ByteView query, std::size_t limit);
    dns::Message handle(const dns::Message& query);

    /// Swap the chain view. With invalidate_on_update the caller passes the
    /// domains that changed.
    void set_directory(std::shared_ptr<const DomainDirectory> directory, const std::vector<std::string>& changed = {});
    /// Remove a name (and, for a registered domain, everything under it)
    /// from every tier.
    void invalidate(std::string_view dns_name);

    void set_forwarder(Forwarder f);

    CounterSnapshot counters() const;
    const ResolverConfig& config() const { return config_; }
    MemoryCache& l1() { return l1_; }
    FileCache* l2() { return l2_.get(); }
    BindingCache& l3() { return l3_; }

private:
    struct Chased;
    std::optional<DomainBinding> binding(const std::string& dns_name, const DomainDirectory& dir, double& valid_until);
    void fresh(const std::string& qname, std::uint16_t qtype, unsigned depth, const DomainDirectory& dir, Chased& out);
    bool managed(std::string_view qname) const;

    ResolverConfig config_;
    Clock clock_;
    MemoryCache l1_;
    std::unique_ptr<FileCache> l2_;
    BindingCache l3_;
    std::shared_ptr<ContentSource> content_;
    mutable std::mutex dir_mu_;
    std::shared_ptr<const DomainDirectory> directory_;
    Forwarder forwarder_;

    struct Counters {
        std::atomic<std::uint64_t> queries{0}, l1_hits{0}, l2_hits{0}, l3_hits{0}, chain_reads{0}, store_reads{0},
            servfail{0}, nxdomain{0}, integrity_failures{0}, forwarded{0}, refused{0};
    } counters_;
};

/// Lowercase, no trailing dot.
std::string normalize_name(std::string_view name);

}  // namespace ddns::resolver
