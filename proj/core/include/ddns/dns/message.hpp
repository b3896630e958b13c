#pragma once

#include "ddns/common/bytes.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddns::dns {

namespace type {
inline constexpr std::uint16_t A = 1, NS = 2, CNAME = 5, SOA = 6, PTR = 12, HINFO = 13, MX = 15, TXT = 16, RP = 17,
                               AAAA = 28, LOC = 29, SRV = 33, NAPTR = 35, OPT = 41, SSHFP = 44, TLSA = 52, SPF = 99,
                               ANY = 255, URI = 256, CAA = 257;
}
inline constexpr std::uint16_t kClassIn = 1;

enum class Rcode : std::uint8_t { noerror = 0, formerr = 1, servfail = 2, nxdomain = 3, notimp = 4, refused = 5 };

const char* rcode_name(Rcode r);
/// "A", "MX", ... or "TYPE<n>".
std::string type_to_text(std::uint16_t t);
/// Accepts mnemonics (case-insensitive) and "TYPE<n>".
std::optional<std::uint16_t> type_from_text(std::string_view s);

struct Header {
    std::uint16_t id = 0;
    bool qr = false;
    std::uint8_t opcode = 0;
    bool aa = false, tc = false, rd = false, ra = false;
    std::uint8_t z = 0;  // three reserved bits, carried verbatim
    Rcode rcode = Rcode::noerror;

    std::uint16_t flags() const;
    static Header from_flags(std::uint16_t id, std::uint16_t flags);
    bool operator==(const Header&) const = default;
};

/// Names are in presentation form without the trailing dot ("" is the
/// root). Dots and backslashes inside labels are escaped as "\.", "\\";
/// bytes outside printable ASCII as "\DDD".
struct Question {
    std::string name;
    std::uint16_t qtype = type::A;
    std::uint16_t qclass = kClassIn;
    bool operator==(const Question&) const = default;
};

/// `rdata` always holds the uncompressed form; names inside the rdata of
/// NS, CNAME, SOA, PTR and MX are compressed on encode and expanded on
/// decode.
struct ResourceRecord {
    std::string name;
    std::uint16_t rtype = type::A;
    std::uint16_t rclass = kClassIn;
    std::uint32_t ttl = 0;
    Bytes rdata;
    bool operator==(const ResourceRecord&) const = default;
};

struct Message {
    Header header;
    std::vector<Question> questions;
    std::vector<ResourceRecord> answers, authority, additional;
    bool operator==(const Message&) const = default;
};

class WireError : public std::runtime_error {
public:
    WireError(std::string reason, std::size_t offset)
        : std::runtime_error("dns wire error at " + std::to_string(offset) + ": " + reason),
          reason(std::move(reason)),
          offset(offset) {}
    std::string reason;
    std::size_t offset;
};

inline constexpr std::size_t kMaxMessageSize = 65535;
inline constexpr std::size_t kUdpLimit = 512;

/// Throws WireError for names or rdata that cannot be represented.
Bytes encode_message(const Message& m);
/// Encodes and, when larger than `limit`, drops whole records from the end
/// and sets TC.
Bytes encode_message(const Message& m, std::size_t limit);
/// Never reads out of bounds; compression pointers must point strictly
/// backwards, so decoding terminates on any input.
Message decode_message(ByteView wire);

/// Uncompressed wire form of a presentation name.
Bytes encode_name(std::string_view name);
/// Labels of a presentation name, unescaped.
std::vector<std::string> split_name(std::string_view name);
std::string join_labels(const std::vector<std::string>& labels);

/// Presentation text of common rdata ("192.168.1.100", "10 mail.x", ...);
/// unknown types use the generic "\# len hex" form.
std::string rdata_to_text(const ResourceRecord& rr);

/// Fresh query with RD set.
Message make_query(std::string_view name, std::uint16_t qtype, std::uint16_t id);

}  // namespace ddns::dns
