#include "ddns/zone/records.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <regex>
#include <set>

namespace ddns::zone {

using nlohmann::json;

namespace {

constexpr std::string_view kTypeNames[] = {"A",   "AAAA", "CNAME", "MX",  "TXT",  "SPF",   "DKIM",
                                           "DMARC", "SRV", "NS",    "PTR", "SOA",  "CAA",   "TLSA",
                                           "SSHFP", "URI", "NAPTR", "LOC", "HINFO", "RP"};

// Collects issues while pulling typed fields out of one record object.
class Fields {
public:
    Fields(const json& obj, std::vector<FieldIssue>& issues) : obj_(obj), issues_(issues) {}

    void issue(std::string field, std::string reason) { issues_.push_back({std::move(field), std::move(reason)}); }

    const json* find(const char* name, bool required) {
        used_.insert(name);
        auto it = obj_.find(name);
        if (it == obj_.end()) {
            if (required) issue(name, "missing-field");
            return nullptr;
        }
        return &*it;
    }

    template <class T>
    T uint(const char* name, std::uint64_t lo, std::uint64_t hi, std::optional<T> fallback = std::nullopt) {
        const json* v = find(name, !fallback);
        if (!v) return fallback.value_or(T{});
        if (v->is_number_integer()) {
            if (!v->is_number_unsigned() && v->get<std::int64_t>() < 0) {
                issue(name, "out-of-range");
                return T{};
            }
            auto x = v->get<std::uint64_t>();
            if (x < lo || x > hi) {
                issue(name, "out-of-range");
                return T{};
            }
            return static_cast<T>(x);
        }
        issue(name, "wrong-type");
        return T{};
    }

    double real(const char* name, double lo, double hi, std::optional<double> fallback = std::nullopt) {
        const json* v = find(name, !fallback);
        if (!v) return fallback.value_or(0);
        if (!v->is_number()) {
            issue(name, "wrong-type");
            return 0;
        }
        double x = v->get<double>();
        if (!std::isfinite(x) || x < lo || x > hi) {
            issue(name, "out-of-range");
            return 0;
        }
        return x;
    }

    std::string text(const char* name, std::size_t max_len, bool allow_empty = false) {
        const json* v = find(name, true);
        if (!v) return {};
        if (!v->is_string()) {
            issue(name, "wrong-type");
            return {};
        }
        auto s = v->get<std::string>();
        if ((!allow_empty && s.empty()) || s.size() > max_len) issue(name, "bad-length");
        return s;
    }

    std::string name(const char* field, bool allow_root = false) {
        auto s = text(field, 255);
        if (s.empty()) return s;
        if (!(allow_root && s == ".") && !valid_record_name(s)) issue(field, "bad-name");
        return s;
    }

    Bytes hex(const char* field, std::optional<std::size_t> exact_len) {
        auto s = text(field, 4096);
        if (s.empty()) return {};
        bool ok = s.size() % 2 == 0 && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isxdigit(c); });
        if (!ok) {
            issue(field, "bad-hex");
            return {};
        }
        auto b = from_hex(s);
        if (exact_len && b.size() != *exact_len) issue(field, "bad-length");
        return b;
    }

    std::vector<std::string> chunks(const char* field) {
        const json* v = find(field, true);
        if (!v) return {};
        std::vector<std::string> out;
        if (v->is_string()) {
            out.push_back(v->get<std::string>());
        } else if (v->is_array() && !v->empty()) {
            for (const auto& c : *v) {
                if (!c.is_string()) {
                    issue(field, "wrong-type");
                    return {};
                }
                out.push_back(c.get<std::string>());
            }
        } else {
            issue(field, "wrong-type");
            return {};
        }
        for (const auto& c : out)
            if (c.size() > 255) {
                issue(field, "bad-length");
                break;
            }
        return out;
    }

    void finish() {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!used_.count(it.key())) issue(it.key(), "unknown-field");
    }

private:
    const json& obj_;
    std::vector<FieldIssue>& issues_;
    std::set<std::string> used_;
};

constexpr std::uint64_t kU16 = 65535;
constexpr std::uint64_t kU31 = 2147483647;

RecordData parse_data(RecordType type, Fields& f) {
    switch (type) {
        case RecordType::A: {
            auto s = f.text("address", 15);
            ARecord r;
            if (!s.empty() && inet_pton(AF_INET, s.c_str(), r.address.data()) != 1) f.issue("address", "bad-ipv4");
            return r;
        }
        case RecordType::AAAA: {
            auto s = f.text("address", 45);
            AaaaRecord r;
            if (!s.empty() && inet_pton(AF_INET6, s.c_str(), r.address.data()) != 1) f.issue("address", "bad-ipv6");
            return r;
        }
        case RecordType::CNAME:
        case RecordType::NS:
        case RecordType::PTR:
            return NameRecord{f.name("target")};
        case RecordType::MX: {
            MxRecord r;
            r.priority = f.uint<std::uint16_t>("priority", 0, kU16);
            r.server = f.name("server");
            return r;
        }
        case RecordType::TXT:
        case RecordType::SPF:
        case RecordType::DKIM:
        case RecordType::DMARC: {
            TextRecord r{f.chunks("text")};
            auto all = r.joined();
            if (type == RecordType::TXT) return r;
            if (r.chunks.empty()) return r;
            auto starts = [&](std::string_view prefix) {
                return all.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), all.begin()) &&
                       (all.size() == prefix.size() || all[prefix.size()] == ' ' || all[prefix.size()] == ';');
            };
            if (type == RecordType::SPF && !starts("v=spf1")) f.issue("text", "bad-spf");
            if (type == RecordType::DMARC && !starts("v=DMARC1")) f.issue("text", "bad-dmarc");
            if (type == RecordType::DKIM) {
                bool has_p = false;
                std::size_t pos = 0;
                while (pos <= all.size()) {
                    auto end = all.find(';', pos);
                    if (end == std::string::npos) end = all.size();
                    auto tag = all.substr(pos, end - pos);
                    auto b = tag.find_first_not_of(" \t");
                    if (b != std::string::npos && tag.compare(b, 2, "p=") == 0) has_p = true;
                    pos = end + 1;
                }
                if (!has_p) f.issue("text", "bad-dkim");
            }
            return r;
        }
        case RecordType::SRV: {
            SrvRecord r;
            r.priority = f.uint<std::uint16_t>("priority", 0, kU16);
            r.weight = f.uint<std::uint16_t>("weight", 0, kU16);
            r.port = f.uint<std::uint16_t>("port", 0, kU16);
            r.target = f.name("target", true);
            return r;
        }
        case RecordType::SOA: {
            SoaRecord r;
            r.mname = f.name("mname");
            r.rname = f.name("rname");
            r.serial = f.uint<std::uint32_t>("serial", 0, 4294967295u);
            r.refresh = f.uint<std::uint32_t>("refresh", 0, kU31);
            r.retry = f.uint<std::uint32_t>("retry", 0, kU31);
            r.expire = f.uint<std::uint32_t>("expire", 0, kU31);
            r.minimum = f.uint<std::uint32_t>("minimum", 0, kU31);
            return r;
        }
        case RecordType::CAA: {
            CaaRecord r;
            r.flags = f.uint<std::uint8_t>("flags", 0, 255);
            r.tag = f.text("tag", 15);
            if (!r.tag.empty() && r.tag != "issue" && r.tag != "issuewild" && r.tag != "iodef") f.issue("tag", "bad-tag");
            r.value = f.text("value", 255, r.tag != "iodef");
            return r;
        }
        case RecordType::TLSA: {
            TlsaRecord r;
            r.usage = f.uint<std::uint8_t>("usage", 0, 3);
            r.selector = f.uint<std::uint8_t>("selector", 0, 1);
            r.matching_type = f.uint<std::uint8_t>("matching_type", 0, 2);
            std::optional<std::size_t> len;
            if (r.matching_type == 1) len = 32;
            if (r.matching_type == 2) len = 64;
            r.certificate = f.hex("certificate", len);
            return r;
        }
        case RecordType::SSHFP: {
            SshfpRecord r;
            r.algorithm = f.uint<std::uint8_t>("algorithm", 1, 4);
            r.fingerprint_type = f.uint<std::uint8_t>("fingerprint_type", 1, 2);
            r.fingerprint = f.hex("fingerprint", r.fingerprint_type == 2 ? 32 : 20);
            return r;
        }
        case RecordType::URI: {
            UriRecord r;
            r.priority = f.uint<std::uint16_t>("priority", 0, kU16);
            r.weight = f.uint<std::uint16_t>("weight", 0, kU16);
            r.target = f.text("target", 2048);
            static const std::regex uri(R"(^[A-Za-z][A-Za-z0-9+.\-]*:[^\s]+$)");
            if (!r.target.empty() && !std::regex_match(r.target, uri)) f.issue("target", "bad-uri");
            return r;
        }
        case RecordType::NAPTR: {
            NaptrRecord r;
            r.order = f.uint<std::uint16_t>("order", 0, kU16);
            r.preference = f.uint<std::uint16_t>("preference", 0, kU16);
            r.flags = f.text("flags", 255, true);
            bool flags_ok = r.flags.size() <= 1 &&
                            std::all_of(r.flags.begin(), r.flags.end(), [](char c) { return std::strchr("SAUPsaup", c); });
            if (!flags_ok) f.issue("flags", "bad-flags");
            r.services = f.text("services", 255, true);
            r.regexp = f.text("regexp", 255, true);
            r.replacement = f.name("replacement", true);
            return r;
        }
        case RecordType::LOC: {
            LocRecord r;
            r.latitude = f.real("latitude", -90, 90);
            r.longitude = f.real("longitude", -180, 180);
            r.altitude = f.real("altitude", -100000, 42849672.95, 0.0);
            r.size = f.real("size", 0, 90000000, 1.0);
            r.horizontal_precision = f.real("horizontal_precision", 0, 90000000, 10000.0);
            r.vertical_precision = f.real("vertical_precision", 0, 90000000, 10.0);
            return r;
        }
        case RecordType::HINFO: {
            HinfoRecord r;
            r.cpu = f.text("cpu", 255);
            r.os = f.text("os", 255);
            return r;
        }
        case RecordType::RP: {
            RpRecord r;
            r.mbox = f.name("mbox", true);
            r.txt = f.name("txt", true);
            return r;
        }
    }
    return ARecord{};
}

std::string ip_text(int family, const std::uint8_t* bytes) {
    char buf[INET6_ADDRSTRLEN];
    inet_ntop(family, bytes, buf, sizeof buf);
    return buf;
}

json chunks_json(const TextRecord& t) {
    if (t.chunks.size() == 1) return t.chunks[0];
    return t.chunks;
}

}  // namespace

std::string_view type_name(RecordType t) { return kTypeNames[static_cast<std::size_t>(t)]; }

std::optional<RecordType> type_from_name(std::string_view name) {
    for (std::size_t i = 0; i < std::size(kTypeNames); ++i)
        if (kTypeNames[i] == name) return static_cast<RecordType>(i);
    return std::nullopt;
}

std::string TextRecord::joined() const {
    std::string out;
    for (const auto& c : chunks) out += c;
    return out;
}

RecordReport validate_record(RecordType type, const json& fields) {
    RecordReport rep;
    if (!fields.is_object()) {
        rep.issues.push_back({"", "wrong-type"});
        return rep;
    }
    Fields f(fields, rep.issues);
    RecordEntry e;
    e.type = type;
    e.ttl = f.uint<std::uint32_t>("ttl", 1, kMaxTtl, kDefaultTtl);
    e.data = parse_data(type, f);
    f.finish();
    if (rep.issues.empty()) rep.entry = std::move(e);
    return rep;
}

RecordReport validate_record(std::string_view type, const json& fields) {
    auto t = type_from_name(type);
    if (!t) {
        RecordReport rep;
        rep.issues.push_back({"", "unknown-type"});
        return rep;
    }
    return validate_record(*t, fields);
}

json record_to_json(const RecordEntry& e) {
    json j = json::object();
    j["ttl"] = e.ttl;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ARecord>) {
                j["address"] = ip_text(AF_INET, d.address.data());
            } else if constexpr (std::is_same_v<T, AaaaRecord>) {
                j["address"] = ip_text(AF_INET6, d.address.data());
            } else if constexpr (std::is_same_v<T, NameRecord>) {
                j["target"] = d.target;
            } else if constexpr (std::is_same_v<T, MxRecord>) {
                j["priority"] = d.priority;
                j["server"] = d.server;
            } else if constexpr (std::is_same_v<T, TextRecord>) {
                j["text"] = chunks_json(d);
            } else if constexpr (std::is_same_v<T, SrvRecord>) {
                j["priority"] = d.priority;
                j["weight"] = d.weight;
                j["port"] = d.port;
                j["target"] = d.target;
            } else if constexpr (std::is_same_v<T, SoaRecord>) {
                j["mname"] = d.mname;
                j["rname"] = d.rname;
                j["serial"] = d.serial;
                j["refresh"] = d.refresh;
                j["retry"] = d.retry;
                j["expire"] = d.expire;
                j["minimum"] = d.minimum;
            } else if constexpr (std::is_same_v<T, CaaRecord>) {
                j["flags"] = d.flags;
                j["tag"] = d.tag;
                j["value"] = d.value;
            } else if constexpr (std::is_same_v<T, TlsaRecord>) {
                j["usage"] = d.usage;
                j["selector"] = d.selector;
                j["matching_type"] = d.matching_type;
                j["certificate"] = to_hex(d.certificate);
            } else if constexpr (std::is_same_v<T, SshfpRecord>) {
                j["algorithm"] = d.algorithm;
                j["fingerprint_type"] = d.fingerprint_type;
                j["fingerprint"] = to_hex(d.fingerprint);
            } else if constexpr (std::is_same_v<T, UriRecord>) {
                j["priority"] = d.priority;
                j["weight"] = d.weight;
                j["target"] = d.target;
            } else if constexpr (std::is_same_v<T, NaptrRecord>) {
                j["order"] = d.order;
                j["preference"] = d.preference;
                j["flags"] = d.flags;
                j["services"] = d.services;
                j["regexp"] = d.regexp;
                j["replacement"] = d.replacement;
            } else if constexpr (std::is_same_v<T, LocRecord>) {
                j["latitude"] = d.latitude;
                j["longitude"] = d.longitude;
                j["altitude"] = d.altitude;
                j["size"] = d.size;
                j["horizontal_precision"] = d.horizontal_precision;
                j["vertical_precision"] = d.vertical_precision;
            } else if constexpr (std::is_same_v<T, HinfoRecord>) {
                j["cpu"] = d.cpu;
                j["os"] = d.os;
            } else if constexpr (std::is_same_v<T, RpRecord>) {
                j["mbox"] = d.mbox;
                j["txt"] = d.txt;
            }
        },
        e.data);
    return j;
}

bool valid_record_name(std::string_view name) {
    if (name == "@") return true;
    if (!name.empty() && name.back() == '.') name.remove_suffix(1);
    if (name.empty() || name.size() > 253) return false;
    std::size_t pos = 0;
    while (true) {
        auto dot = name.find('.', pos);
        auto label = name.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        if (label.empty() || label.size() > 63 || label.front() == '-' || label.back() == '-') return false;
        for (unsigned char c : label)
            if (!std::isalnum(c) && c != '-' && c != '_') return false;
        if (dot == std::string_view::npos) return true;
        pos = dot + 1;
    }
}

std::string absolute_name(std::string_view value, std::string_view domain) {
    std::string out;
    if (value == "@") {
        out = domain;
    } else if (value.find('.') == std::string_view::npos) {
        out = std::string(value) + "." + std::string(domain);
    } else {
        out = value;
        if (out.back() == '.') out.pop_back();
    }
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace ddns::zone
