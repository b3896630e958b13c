#include "ddns/dns/rdata.hpp"

#include <cmath>

namespace ddns::dns {

using namespace zone;

namespace {

struct Out {
    Bytes b;
    void u8(std::uint8_t v) { b.push_back(v); }
    void u16(std::uint16_t v) {
        u8(static_cast<std::uint8_t>(v >> 8));
        u8(static_cast<std::uint8_t>(v));
    }
    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v >> 16));
        u16(static_cast<std::uint16_t>(v));
    }
    void raw(ByteView v) { b.insert(b.end(), v.begin(), v.end()); }
    void str(std::string_view s) {
        if (s.size() > 255) throw WireError("character-string longer than 255", b.size());
        u8(static_cast<std::uint8_t>(s.size()));
        raw(to_bytes(s));
    }
    void name(std::string_view value, std::string_view domain) { raw(encode_name(absolute_name(value, domain))); }
};

// RFC 1876 size/precision byte: mantissa and power-of-ten exponent in cm.
std::uint8_t loc_precision(double meters) {
    auto cm = static_cast<std::uint64_t>(std::llround(meters * 100));
    unsigned exp = 0;
    std::uint64_t scale = 1;
    while (exp < 9 && cm / scale > 9) {
        ++exp;
        scale *= 10;
    }
    auto mant = static_cast<unsigned>(std::min<std::uint64_t>(9, (cm + scale / 2) / scale));
    if (mant == 0 && cm > 0) mant = 1;
    return static_cast<std::uint8_t>(mant << 4 | exp);
}

std::uint32_t loc_angle(double deg) {
    return static_cast<std::uint32_t>(2147483648LL + std::llround(deg * 3600000.0));
}

}  // namespace

std::uint16_t wire_type(RecordType t) {
    switch (t) {
        case RecordType::A: return type::A;
        case RecordType::AAAA: return type::AAAA;
        case RecordType::CNAME: return type::CNAME;
        case RecordType::MX: return type::MX;
        case RecordType::TXT:
        case RecordType::SPF:
        case RecordType::DKIM:
        case RecordType::DMARC: return type::TXT;
        case RecordType::SRV: return type::SRV;
        case RecordType::NS: return type::NS;
        case RecordType::PTR: return type::PTR;
        case RecordType::SOA: return type::SOA;
        case RecordType::CAA: return type::CAA;
        case RecordType::TLSA: return type::TLSA;
        case RecordType::SSHFP: return type::SSHFP;
        case RecordType::URI: return type::URI;
        case RecordType::NAPTR: return type::NAPTR;
        case RecordType::LOC: return type::LOC;
        case RecordType::HINFO: return type::HINFO;
        case RecordType::RP: return type::RP;
    }
    return 0;
}

std::vector<RecordType> record_types_for(std::uint16_t qtype) {
    if (qtype == type::TXT) return {RecordType::TXT, RecordType::SPF, RecordType::DKIM, RecordType::DMARC};
    if (qtype == type::SPF) return {RecordType::SPF};
    for (auto t : kAllRecordTypes)
        if (wire_type(t) == qtype) return {t};
    return {};
}

Bytes encode_rdata(const RecordEntry& e, std::string_view domain) {
    Out o;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ARecord> || std::is_same_v<T, AaaaRecord>) {
                o.raw(d.address);
            } else if constexpr (std::is_same_v<T, NameRecord>) {
                o.name(d.target, domain);
            } else if constexpr (std::is_same_v<T, MxRecord>) {
                o.u16(d.priority);
                o.name(d.server, domain);
            } else if constexpr (std::is_same_v<T, TextRecord>) {
                for (const auto& c : d.chunks) o.str(c);
            } else if constexpr (std::is_same_v<T, SrvRecord>) {
                o.u16(d.priority);
                o.u16(d.weight);
                o.u16(d.port);
                o.name(d.target, domain);
            } else if constexpr (std::is_same_v<T, SoaRecord>) {
                o.name(d.mname, domain);
                o.name(d.rname, domain);
                for (auto v : {d.serial, d.refresh, d.retry, d.expire, d.minimum}) o.u32(v);
            } else if constexpr (std::is_same_v<T, CaaRecord>) {
                o.u8(d.flags);
                o.str(d.tag);
                o.raw(to_bytes(d.value));
            } else if constexpr (std::is_same_v<T, TlsaRecord>) {
                o.u8(d.usage);
                o.u8(d.selector);
                o.u8(d.matching_type);
                o.raw(d.certificate);
            } else if constexpr (std::is_same_v<T, SshfpRecord>) {
                o.u8(d.algorithm);
                o.u8(d.fingerprint_type);
                o.raw(d.fingerprint);
            } else if constexpr (std::is_same_v<T, UriRecord>) {
                o.u16(d.priority);
                o.u16(d.weight);
                o.raw(to_bytes(d.target));
            } else if constexpr (std::is_same_v<T, NaptrRecord>) {
                o.u16(d.order);
                o.u16(d.preference);
                o.str(d.flags);
                o.str(d.services);
                o.str(d.regexp);
                o.name(d.replacement, domain);
            } else if constexpr (std::is_same_v<T, LocRecord>) {
                o.u8(0);
                o.u8(loc_precision(d.size));
                o.u8(loc_precision(d.horizontal_precision));
                o.u8(loc_precision(d.vertical_precision));
                o.u32(loc_angle(d.latitude));
                o.u32(loc_angle(d.longitude));
                o.u32(static_cast<std::uint32_t>(std::llround(d.altitude * 100) + 10000000));
            } else if constexpr (std::is_same_v<T, HinfoRecord>) {
                o.str(d.cpu);
                o.str(d.os);
            } else if constexpr (std::is_same_v<T, RpRecord>) {
                o.name(d.mbox, domain);
                o.name(d.txt, domain);
            }
        },
        e.data);
    return std::move(o.b);
}

ResourceRecord to_resource_record(const RecordEntry& e, std::string_view owner, std::string_view domain) {
    return ResourceRecord{std::string(owner), wire_type(e.type), kClassIn, e.ttl, encode_rdata(e, domain)};
}

}  // namespace ddns::dns
