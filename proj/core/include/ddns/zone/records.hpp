#pragma once

#include "ddns/common/bytes.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ddns::zone {

enum class RecordType : std::uint8_t {
    A, AAAA, CNAME, MX, TXT, SPF, DKIM, DMARC, SRV, NS,
    PTR, SOA, CAA, TLSA, SSHFP, URI, NAPTR, LOC, HINFO, RP,
};

inline constexpr std::array<RecordType, 20> kAllRecordTypes = {
    RecordType::A,     RecordType::AAAA,  RecordType::CNAME, RecordType::MX,    RecordType::TXT,
    RecordType::SPF,   RecordType::DKIM,  RecordType::DMARC, RecordType::SRV,   RecordType::NS,
    RecordType::PTR,   RecordType::SOA,   RecordType::CAA,   RecordType::TLSA,  RecordType::SSHFP,
    RecordType::URI,   RecordType::NAPTR, RecordType::LOC,   RecordType::HINFO, RecordType::RP,
};

std::string_view type_name(RecordType t);
std::optional<RecordType> type_from_name(std::string_view name);

inline constexpr std::uint32_t kDefaultTtl = 3600;
inline constexpr std::uint32_t kMaxTtl = 86400;

struct ARecord {
    std::array<std::uint8_t, 4> address{};
    bool operator==(const ARecord&) const = default;
};
struct AaaaRecord {
    std::array<std::uint8_t, 16> address{};
    bool operator==(const AaaaRecord&) const = default;
};
/// CNAME, NS, PTR.
struct NameRecord {
    std::string target;
    bool operator==(const NameRecord&) const = default;
};
struct MxRecord {
    std::uint16_t priority = 0;
    std::string server;
    bool operator==(const MxRecord&) const = default;
};
/// TXT, SPF, DKIM, DMARC: character strings of at most 255 bytes each.
struct TextRecord {
    std::vector<std::string> chunks;
    std::string joined() const;
    bool operator==(const TextRecord&) const = default;
};
struct SrvRecord {
    std::uint16_t priority = 0, weight = 0, port = 0;
    std::string target;
    bool operator==(const SrvRecord&) const = default;
};
struct SoaRecord {
    std::string mname, rname;
    std::uint32_t serial = 0, refresh = 0, retry = 0, expire = 0, minimum = 0;
    bool operator==(const SoaRecord&) const = default;
};
struct CaaRecord {
    std::uint8_t flags = 0;
    std::string tag, value;
    bool operator==(const CaaRecord&) const = default;
};
struct TlsaRecord {
    std::uint8_t usage = 0, selector = 0, matching_type = 0;
    Bytes certificate;
    bool operator==(const TlsaRecord&) const = default;
};
struct SshfpRecord {
    std::uint8_t algorithm = 1, fingerprint_type = 1;
    Bytes fingerprint;
    bool operator==(const SshfpRecord&) const = default;
};
struct UriRecord {
    std::uint16_t priority = 0, weight = 0;
    std::string target;
    bool operator==(const UriRecord&) const = default;
};
struct NaptrRecord {
    std::uint16_t order = 0, preference = 0;
    std::string flags, services, regexp, replacement;
    bool operator==(const NaptrRecord&) const = default;
};
/// Degrees and meters.
struct LocRecord {
    double latitude = 0, longitude = 0, altitude = 0;
    double size = 1, horizontal_precision = 10000, vertical_precision = 10;
    bool operator==(const LocRecord&) const = default;
};
struct HinfoRecord {
    std::string cpu, os;
    bool operator==(const HinfoRecord&) const = default;
};
struct RpRecord {
    std::string mbox, txt;
    bool operator==(const RpRecord&) const = default;
};

using RecordData = std::variant<ARecord, AaaaRecord, NameRecord, MxRecord, TextRecord, SrvRecord, SoaRecord, CaaRecord,
                                TlsaRecord, SshfpRecord, UriRecord, NaptrRecord, LocRecord, HinfoRecord, RpRecord>;

struct RecordEntry {
    RecordType type = RecordType::A;
    std::uint32_t ttl = kDefaultTtl;
    RecordData data;

    bool operator==(const RecordEntry&) const = default;
};

struct FieldIssue {
    std::string field;
    std::string reason;
    bool operator==(const FieldIssue&) const = default;
};

struct RecordReport {
    std::vector<FieldIssue> issues;
    std::optional<RecordEntry> entry;
    bool ok() const { return issues.empty(); }
};

/// Per-type field checks; every problem is reported, not just the first.
/// Reasons: missing-field, unknown-field, wrong-type, out-of-range,
/// bad-ipv4, bad-ipv6, bad-name, bad-tag, bad-hex, bad-length, bad-text,
/// bad-spf, bad-dkim, bad-dmarc, bad-uri, bad-flags.
RecordReport validate_record(RecordType type, const nlohmann::json& fields);
RecordReport validate_record(std::string_view type, const nlohmann::json& fields);

/// Canonical field object, including the TTL.
nlohmann::json record_to_json(const RecordEntry& e);

/// Hostname syntax for record values: labels of [A-Za-z0-9_-], 1-63 bytes,
/// no leading or trailing '-', at most 253 bytes, optional trailing dot.
/// "@" names the apex.
bool valid_record_name(std::string_view name);

/// Lowercase absolute form (no trailing dot) of a record value relative to
/// `domain`: "@" is the apex, a name without dots is relative, anything
/// with a dot is taken literally.
std::string absolute_name(std::string_view value, std::string_view domain);

}  // namespace ddns::zone
