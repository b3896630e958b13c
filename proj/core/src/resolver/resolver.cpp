#include "ddns/resolver/resolver.hpp"

#include "ddns/dns/rdata.hpp"
#include "ddns/registry/names.hpp"
#include "ddns/resolver/transport.hpp"

#include <algorithm>
#include <limits>

namespace ddns::resolver {

using dns::Rcode;

std::string normalize_name(std::string_view name) {
    std::string n(name);
    if (!n.empty() && n.back() == '.') n.pop_back();
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return n;
}

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::none: return "none";
        case Tier::l1: return "l1";
        case Tier::l2: return "l2";
        case Tier::chain: return "chain";
        case Tier::upstream: return "upstream";
    }
    return "?";
}

std::optional<DomainBinding> StateDirectory::find(const std::string& asset_name) const {
    const auto* a = state_->find_asset(asset_name);
    if (!a) return std::nullopt;
    return DomainBinding{a->asset_name, a->ipfs_hash, a->owner_address.encode(), a->updated_height};
}

std::vector<std::string> changed_domains(const chain::ChainState& before, const chain::ChainState& after) {
    std::vector<std::string> out;
    auto note = [&](const std::string& asset) {
        if (auto dns = registry::asset_to_dns(asset)) out.push_back(*dns);
    };
    auto a = before.assets.begin(), b = after.assets.begin();
    while (a != before.assets.end() || b != after.assets.end()) {
        if (b == after.assets.end() || (a != before.assets.end() && a->first < b->first)) {
            note((a++)->first);
        } else if (a == before.assets.end() || b->first < a->first) {
            note((b++)->first);
        } else {
            if (a->second.ipfs_hash != b->second.ipfs_hash || a->second.owner_address != b->second.owner_address)
                note(a->first);
            ++a;
            ++b;
        }
    }
    return out;
}

Bytes StoreSource::fetch(const content::ContentId& id) {
    // The store re-hashes on read; the resolver checks again on its own.
    return store_->get(id);
}

struct Resolver::Chased {
    Rcode rcode = Rcode::noerror;
    std::vector<dns::ResourceRecord> answers, authority;
    std::vector<std::string> zones, content_ids;
    std::string error;
    double valid_until = std::numeric_limits<double>::max();
};

Resolver::Resolver(ResolverConfig config, std::shared_ptr<const DomainDirectory> directory,
                   std::shared_ptr<ContentSource> content, Clock clock)
    : config_(std::move(config)),
      clock_(std::move(clock)),
      l1_(config_.l1_capacity, config_.l1_ttl, clock_),
      l3_(config_.l3_ttl, clock_),
      content_(std::move(content)),
      directory_(std::move(directory)) {
    if (!config_.cache_dir.empty()) l2_ = std::make_unique<FileCache>(config_.cache_dir, clock_);
    if (config_.upstream) {
        auto up = *config_.upstream;
        int timeout = config_.upstream_timeout_ms, retries = config_.upstream_retries;
        forwarder_ = [up, timeout, retries](ByteView q) { return udp_exchange(up, q, timeout, retries); };
    }
}

bool Resolver::managed(std::string_view qname) const {
    auto dot = qname.rfind('.');
    auto tld = dot == std::string_view::npos ? qname : qname.substr(dot + 1);
    return config_.managed_tlds.count(std::string(tld)) > 0;
}

// `valid_until` is lowered to the time the binding view used here goes
// stale, so nothing derived from it outlives the ownership tier.
std::optional<DomainBinding> Resolver::binding(const std::string& dns_name, const DomainDirectory& dir,
                                               double& valid_until) {
    auto asset = registry::dns_to_asset(dns_name);
    if (!asset) return std::nullopt;
    double expires = 0;
    if (auto hit = l3_.get(*asset, &expires)) {
        ++counters_.l3_hits;
        valid_until = std::min(valid_until, expires);
        return hit;
    }
    ++counters_.chain_reads;
    auto b = dir.find(*asset);
    if (b) l3_.put(*asset, *b);
    valid_until = std::min(valid_until, clock_() + config_.l3_ttl);
    return b;
}

void Resolver::fresh(const std::string& qname, std::uint16_t qtype, unsigned depth, const DomainDirectory& dir,
                     Chased& out) {
    auto fail = [&](std::string why) {
        out.rcode = Rcode::servfail;
        out.error = std::move(why);
    };
    if (depth > config_.chase_limit) return fail("CNAME chain longer than " + std::to_string(config_.chase_limit));
    if (!managed(qname)) return;  // CNAME out of the managed zones: the client follows it

    // Most specific registered domain containing qname.
    std::optional<DomainBinding> b;
    std::string zone;
    for (std::size_t pos = 0; pos != std::string::npos && !b;) {
        auto cand = qname.substr(pos);
        if (cand.find('.') == std::string::npos) break;
        b = binding(cand, dir, out.valid_until);
        if (b) zone = cand;
        auto dot = qname.find('.', pos);
        pos = dot == std::string::npos ? dot : dot + 1;
    }
    if (!b) {
        out.rcode = Rcode::nxdomain;
        return;
    }
    out.zones.push_back(zone);
    if (!b->content_id) return;  // registered without records

    auto id = content::ContentId::try_parse(*b->content_id);
    if (!id) return fail("malformed content id on chain");
    Bytes payload;
    try {
        ++counters_.store_reads;
        payload = content_->fetch(*id);
    } catch (const content::StoreError& e) {
        if (e.code() == content::StoreError::Code::corruption) ++counters_.integrity_failures;
        return fail(std::string("content store: ") + e.what());
    }
    if (!content::verify_integrity(*id, payload)) {
        ++counters_.integrity_failures;
        return fail("control file does not match its on-chain content id");
    }
    zone::ControlFile cf;
    try {
        cf = zone::parse_control_file(ByteView(payload));
    } catch (const zone::ControlFileError& e) {
        return fail(std::string("control file rejected: ") + e.what());
    }
    if (cf.domain != zone) return fail("control file is for " + cf.domain + ", not " + zone);
    out.content_ids.push_back(id->text());

    auto soa_authority = [&] {
        auto apex = cf.records.find("@");
        if (apex == cf.records.end()) return;
        auto soa = apex->second.find(zone::RecordType::SOA);
        if (soa == apex->second.end()) return;
        auto rr = dns::to_resource_record(soa->second.front(), zone, zone);
        rr.ttl = std::min(rr.ttl, std::get<zone::SoaRecord>(soa->second.front().data).minimum);
        out.authority.push_back(std::move(rr));
    };

    auto label = zone::label_for(cf, qname);
    auto li = label ? cf.records.find(*label) : cf.records.end();
    if (li == cf.records.end()) {
        out.rcode = Rcode::nxdomain;
        soa_authority();
        return;
    }
    const auto& sets = li->second;
    auto cname = sets.find(zone::RecordType::CNAME);
    if (cname != sets.end() && qtype != dns::type::CNAME && qtype != dns::type::ANY) {
        const auto& e = cname->second.front();
        out.answers.push_back(dns::to_resource_record(e, qname, zone));
        auto target = zone::absolute_name(std::get<zone::NameRecord>(e.data).target, cf.domain);
        return fresh(target, qtype, depth + 1, dir, out);
    }
    std::vector<zone::RecordType> types;
    if (qtype == dns::type::ANY) {
        for (const auto& [t, _] : sets) types.push_back(t);
    } else {
        types = dns::record_types_for(qtype);
    }
    bool any = false;
    for (auto t : types) {
        auto it = sets.find(t);
        if (it == sets.end()) continue;
        for (const auto& e : it->second) out.answers.push_back(dns::to_resource_record(e, qname, zone));
        any = true;
    }
    if (!any) soa_authority();
}

Resolution Resolver::resolve(std::string_view qname_in, std::uint16_t qtype) {
    ++counters_.queries;
    Resolution r;
    auto qname = normalize_name(qname_in);
    if (!managed(qname)) {
        if (forwarder_) {
            r.forward = true;
            r.tier = Tier::upstream;
        } else {
            ++counters_.refused;
            r.rcode = Rcode::refused;
        }
        return r;
    }
    r.authoritative = true;
    CacheKey key{qname, qtype};
    auto from_cache = [&](CachedAnswer a, Tier tier) {
        age_answer(a, clock_());
        r.rcode = a.rcode;
        r.answers = std::move(a.answers);
        r.authority = std::move(a.authority);
        r.content_ids = std::move(a.content_ids);
        r.tier = tier;
        return r;
    };
    if (auto hit = l1_.get(key)) {
        ++counters_.l1_hits;
        return from_cache(std::move(*hit), Tier::l1);
    }
    if (l2_) {
        if (auto hit = l2_->get(key)) {
            ++counters_.l2_hits;
            l1_.put(key, *hit, hit->expires - clock_());
            return from_cache(std::move(*hit), Tier::l2);
        }
    }

    std::shared_ptr<const DomainDirectory> dir;
    {
        std::lock_guard lock(dir_mu_);
        dir = directory_;
    }
    Chased c;
    fresh(qname, qtype, 0, *dir, c);
    r.tier = Tier::chain;
    r.rcode = c.rcode;
    r.content_ids = c.content_ids;
    if (c.rcode == Rcode::servfail) {
        ++counters_.servfail;
        r.error = c.error;
        return r;  // never cached
    }
    r.answers = c.answers;
    r.authority = c.authority;

    CachedAnswer entry{c.rcode, c.answers, c.authority, c.zones, c.content_ids, clock_(), 0};
    auto view_left = c.valid_until - clock_();
    if (c.rcode == Rcode::nxdomain) ++counters_.nxdomain;
    if (c.rcode == Rcode::nxdomain || c.answers.empty()) {
        l1_.put(key, entry, std::min(config_.negative_ttl, view_left));
        return r;
    }
    double ttl = std::numeric_limits<double>::max();
    for (const auto& rr : c.answers) ttl = std::min(ttl, static_cast<double>(rr.ttl));
    l1_.put(key, entry, std::min(ttl, view_left));
    // Without chain-driven invalidation the persistent tier is bounded by
    // the ownership tier too; otherwise it keeps the record TTL.
    if (!config_.invalidate_on_update) ttl = std::min(ttl, view_left);
    if (l2_ && ttl > 0) {
        entry.expires = clock_() + ttl;
        l2_->put(key, entry);
    }
    return r;
}

dns::Message Resolver::handle(const dns::Message& q) {
    dns::Message resp;
    resp.header.id = q.header.id;
    resp.header.qr = true;
    resp.header.opcode = q.header.opcode;
    resp.header.rd = q.header.rd;
    resp.header.ra = forwarder_ != nullptr;
    resp.questions = q.questions;
    if (q.header.opcode != 0) {
        resp.header.rcode = Rcode::notimp;
        return resp;
    }
    if (q.questions.size() != 1) {
        resp.header.rcode = Rcode::formerr;
        return resp;
    }
    const auto& question = q.questions.front();
    if (question.qclass != dns::kClassIn && question.qclass != dns::type::ANY) {
        resp.header.rcode = Rcode::refused;
        return resp;
    }
    auto r = resolve(question.name, question.qtype);
    if (r.forward) {
        ++counters_.forwarded;
        auto up = forwarder_(dns::encode_message(q));
        if (up) {
            try {
                auto m = dns::decode_message(*up);
                m.header.id = q.header.id;
                return m;
            } catch (const dns::WireError&) {
            }
        }
        resp.header.rcode = Rcode::servfail;
        return resp;
    }
    resp.header.aa = r.authoritative;
    resp.header.rcode = r.rcode;
    resp.answers = std::move(r.answers);
    resp.authority = std::move(r.authority);
    return resp;
}

Bytes Resolver::handle(ByteView query, std::size_t limit) {
    dns::Message q;
    try {
        q = dns::decode_message(query);
    } catch (const dns::WireError&) {
        if (query.size() < 12 || (query[2] & 0x80)) return {};
        dns::Header h = dns::Header::from_flags(static_cast<std::uint16_t>(query[0] << 8 | query[1]),
                                                static_cast<std::uint16_t>(query[2] << 8 | query[3]));
        dns::Message resp;
        resp.header.id = h.id;
        resp.header.qr = true;
        resp.header.opcode = h.opcode;
        resp.header.rd = h.rd;
        resp.header.rcode = Rcode::formerr;
        return dns::encode_message(resp);
    }
    if (q.header.qr) return {};
    auto resp = handle(q);
    try {
        return dns::encode_message(resp, limit);
    } catch (const dns::WireError&) {
        dns::Message fail;
        fail.header = resp.header;
        fail.header.rcode = Rcode::servfail;
        fail.header.aa = false;
        return dns::encode_message(fail, limit);
    }
}

void Resolver::set_directory(std::shared_ptr<const DomainDirectory> directory, const std::vector<std::string>& changed) {
    {
        std::lock_guard lock(dir_mu_);
        directory_ = std::move(directory);
    }
    if (config_.invalidate_on_update)
        for (const auto& name : changed) invalidate(name);
}

void Resolver::invalidate(std::string_view dns_name) {
    auto n = normalize_name(dns_name);
    l1_.invalidate_zone(n);
    if (l2_) l2_->invalidate_zone(n);
    if (auto asset = registry::dns_to_asset(n)) l3_.invalidate(*asset);
}

void Resolver::set_forwarder(Forwarder f) { forwarder_ = std::move(f); }

CounterSnapshot Resolver::counters() const {
    CounterSnapshot s;
    s.queries = counters_.queries;
    s.l1_hits = counters_.l1_hits;
    s.l2_hits = counters_.l2_hits;
    s.l3_hits = counters_.l3_hits;
    s.chain_reads = counters_.chain_reads;
    s.store_reads = counters_.store_reads;
    s.l2_file_reads = l2_ ? l2_->file_reads() : 0;
    s.servfail = counters_.servfail;
    s.nxdomain = counters_.nxdomain;
    s.integrity_failures = counters_.integrity_failures;
    s.forwarded = counters_.forwarded;
    s.refused = counters_.refused;
    return s;
}

}  // namespace ddns::resolver
