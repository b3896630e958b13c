#include "ddns/dns/message.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cctype>
#include <map>

namespace ddns::dns {

namespace {

constexpr std::pair<std::uint16_t, const char*> kTypeNames[] = {
    {type::A, "A"},       {type::NS, "NS"},       {type::CNAME, "CNAME"}, {type::SOA, "SOA"},
    {type::PTR, "PTR"},   {type::HINFO, "HINFO"}, {type::MX, "MX"},       {type::TXT, "TXT"},
    {type::RP, "RP"},     {type::AAAA, "AAAA"},   {type::LOC, "LOC"},     {type::SRV, "SRV"},
    {type::NAPTR, "NAPTR"}, {type::OPT, "OPT"},   {type::SSHFP, "SSHFP"}, {type::TLSA, "TLSA"},
    {type::SPF, "SPF"},   {type::ANY, "ANY"},     {type::URI, "URI"},     {type::CAA, "CAA"},
};

bool compressible(std::uint16_t t) {
    return t == type::NS || t == type::CNAME || t == type::SOA || t == type::PTR || t == type::MX;
}

using Labels = std::vector<std::string>;

std::size_t wire_length(const Labels& labels) {
    std::size_t n = 1;
    for (const auto& l : labels) n += 1 + l.size();
    return n;
}

void check_labels(const Labels& labels, std::size_t offset) {
    for (const auto& l : labels)
        if (l.empty() || l.size() > 63) throw WireError("label length", offset);
    if (wire_length(labels) > 255) throw WireError("name longer than 255 bytes", offset);
}

class Encoder {
public:
    Bytes out;

    void u8(std::uint8_t v) { out.push_back(v); }
    void u16(std::uint16_t v) {
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v));
    }
    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v >> 16));
        u16(static_cast<std::uint16_t>(v));
    }
    void raw(ByteView b) { out.insert(out.end(), b.begin(), b.end()); }

    void name(const Labels& labels) {
        check_labels(labels, out.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto key = suffix_key(labels, i);
            auto it = table_.find(key);
            if (it != table_.end()) {
                u16(static_cast<std::uint16_t>(0xC000 | it->second));
                return;
            }
            if (out.size() < 0x4000) table_.emplace(std::move(key), static_cast<std::uint16_t>(out.size()));
            u8(static_cast<std::uint8_t>(labels[i].size()));
            raw(to_bytes(labels[i]));
        }
        u8(0);
    }

private:
    static std::string suffix_key(const Labels& labels, std::size_t from) {
        std::string k;
        for (std::size_t i = from; i < labels.size(); ++i) {
            k.push_back(static_cast<char>(labels[i].size()));
            k += labels[i];
        }
        return k;
    }
    std::map<std::string, std::uint16_t> table_;
};

// Reads one uncompressed name from rdata.
Labels read_plain_name(ByteView b, std::size_t& pos) {
    Labels labels;
    while (true) {
        if (pos >= b.size()) throw WireError("truncated rdata name", pos);
        std::uint8_t len = b[pos++];
        if (len == 0) break;
        if (len > 63) throw WireError("compressed or bad label in rdata", pos - 1);
        if (pos + len > b.size()) throw WireError("truncated rdata name", pos);
        labels.emplace_back(reinterpret_cast<const char*>(b.data() + pos), len);
        pos += len;
    }
    check_labels(labels, pos);
    return labels;
}

void write_plain_name(Bytes& out, const Labels& labels) {
    for (const auto& l : labels) {
        out.push_back(static_cast<std::uint8_t>(l.size()));
        out.insert(out.end(), l.begin(), l.end());
    }
    out.push_back(0);
}

class Decoder {
public:
    explicit Decoder(ByteView b) : b_(b) {}

    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (b_.size() - pos < n) throw WireError("truncated message", pos);
    }
    std::uint8_t u8() {
        need(1);
        return b_[pos++];
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(b_[pos] << 8 | b_[pos + 1]);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        std::uint32_t hi = u16();
        return hi << 16 | u16();
    }

    // Pointers must point strictly before the pointer itself, so every jump
    // moves backwards and the walk terminates.
    Labels name() { return name_at(pos, true); }

    Labels name_at(std::size_t& cursor, bool advance) {
        Labels labels;
        std::size_t p = cursor;
        std::size_t total = 1;
        bool jumped = false;
        while (true) {
            if (p >= b_.size()) throw WireError("truncated name", p);
            std::uint8_t len = b_[p];
            if ((len & 0xC0) == 0xC0) {
                if (p + 1 >= b_.size()) throw WireError("truncated pointer", p);
                std::size_t target = static_cast<std::size_t>((len & 0x3F) << 8 | b_[p + 1]);
                if (target >= p) throw WireError("forward or self compression pointer", p);
                if (!jumped && advance) cursor = p + 2;
                jumped = true;
                p = target;
                continue;
            }
            if (len & 0xC0) throw WireError("unsupported label type", p);
            ++p;
            if (len == 0) break;
            if (p + len > b_.size()) throw WireError("truncated label", p);
            total += 1 + len;
            if (total > 255) throw WireError("name longer than 255 bytes", p);
            labels.emplace_back(reinterpret_cast<const char*>(b_.data() + p), len);
            p += len;
        }
        if (!jumped && advance) cursor = p;
        return labels;
    }

    Bytes bytes(std::size_t n) {
        need(n);
        Bytes out(b_.begin() + static_cast<std::ptrdiff_t>(pos), b_.begin() + static_cast<std::ptrdiff_t>(pos + n));
        pos += n;
        return out;
    }

    std::size_t size() const { return b_.size(); }

private:
    ByteView b_;
};

void encode_rr(Encoder& e, const ResourceRecord& rr) {
    e.name(split_name(rr.name));
    e.u16(rr.rtype);
    e.u16(rr.rclass);
    e.u32(rr.ttl);
    auto len_at = e.out.size();
    e.u16(0);
    auto start = e.out.size();
    if (compressible(rr.rtype)) {
        std::size_t p = 0;
        ByteView rd = rr.rdata;
        auto fixed = [&](std::size_t n) {
            if (rd.size() - p < n) throw WireError("bad rdata for " + type_to_text(rr.rtype), e.out.size());
            e.raw(rd.subspan(p, n));
            p += n;
        };
        try {
            if (rr.rtype == type::MX) fixed(2);
            e.name(read_plain_name(rd, p));
            if (rr.rtype == type::SOA) {
                e.name(read_plain_name(rd, p));
                fixed(20);
            }
        } catch (const WireError&) {
            throw WireError("bad rdata for " + type_to_text(rr.rtype), e.out.size());
        }
        if (p != rd.size()) throw WireError("trailing rdata for " + type_to_text(rr.rtype), e.out.size());
    } else {
        e.raw(rr.rdata);
    }
    auto len = e.out.size() - start;
    if (len > 0xFFFF) throw WireError("rdata too long", start);
    e.out[len_at] = static_cast<std::uint8_t>(len >> 8);
    e.out[len_at + 1] = static_cast<std::uint8_t>(len);
}

ResourceRecord decode_rr(Decoder& d) {
    ResourceRecord rr;
    rr.name = join_labels(d.name());
    rr.rtype = d.u16();
    rr.rclass = d.u16();
    rr.ttl = d.u32();
    std::size_t len = d.u16();
    d.need(len);
    std::size_t end = d.pos + len;
    if (!compressible(rr.rtype)) {
        rr.rdata = d.bytes(len);
        return rr;
    }
    auto take = [&](std::size_t n) {
        if (end - d.pos < n) throw WireError("rdata overrun", d.pos);
        auto b = d.bytes(n);
        rr.rdata.insert(rr.rdata.end(), b.begin(), b.end());
    };
    auto name = [&] {
        auto labels = d.name_at(d.pos, true);
        if (d.pos > end) throw WireError("rdata overrun", d.pos);
        write_plain_name(rr.rdata, labels);
    };
    if (rr.rtype == type::MX) take(2);
    name();
    if (rr.rtype == type::SOA) {
        name();
        take(20);
    }
    if (d.pos != end) throw WireError("rdata length mismatch", d.pos);
    return rr;
}

}  // namespace

const char* rcode_name(Rcode r) {
    switch (r) {
        case Rcode::noerror: return "NOERROR";
        case Rcode::formerr: return "FORMERR";
        case Rcode::servfail: return "SERVFAIL";
        case Rcode::nxdomain: return "NXDOMAIN";
        case Rcode::notimp: return "NOTIMP";
        case Rcode::refused: return "REFUSED";
    }
    return "RCODE";
}

std::string type_to_text(std::uint16_t t) {
    for (const auto& [v, n] : kTypeNames)
        if (v == t) return n;
    return "TYPE" + std::to_string(t);
}

std::optional<std::uint16_t> type_from_text(std::string_view s) {
    std::string up(s);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const auto& [v, n] : kTypeNames)
        if (up == n) return v;
    if (up.starts_with("TYPE") && up.size() > 4 && up.size() <= 9 &&
        std::all_of(up.begin() + 4, up.end(), [](unsigned char c) { return std::isdigit(c); })) {
        auto v = std::stoul(up.substr(4));
        if (v <= 0xFFFF) return static_cast<std::uint16_t>(v);
    }
    return std::nullopt;
}

std::uint16_t Header::flags() const {
    return static_cast<std::uint16_t>((qr ? 0x8000 : 0) | (opcode & 0xF) << 11 | (aa ? 0x0400 : 0) | (tc ? 0x0200 : 0) |
                                      (rd ? 0x0100 : 0) | (ra ? 0x0080 : 0) | (z & 0x7) << 4 |
                                      (static_cast<std::uint8_t>(rcode) & 0xF));
}

Header Header::from_flags(std::uint16_t id, std::uint16_t f) {
    Header h;
    h.id = id;
    h.qr = f & 0x8000;
    h.opcode = static_cast<std::uint8_t>(f >> 11 & 0xF);
    h.aa = f & 0x0400;
    h.tc = f & 0x0200;
    h.rd = f & 0x0100;
    h.ra = f & 0x0080;
    h.z = static_cast<std::uint8_t>(f >> 4 & 0x7);
    h.rcode = static_cast<Rcode>(f & 0xF);
    return h;
}

std::vector<std::string> split_name(std::string_view name) {
    Labels labels;
    if (name.empty() || name == ".") return labels;
    std::string cur;
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (c == '\\') {
            if (i + 1 >= name.size()) throw WireError("dangling escape in name", i);
            if (std::isdigit(static_cast<unsigned char>(name[i + 1]))) {
                auto ddd = name.substr(i + 1, 3);
                if (ddd.size() != 3 || !std::all_of(ddd.begin(), ddd.end(), [](unsigned char d) { return std::isdigit(d); }))
                    throw WireError("bad \\DDD escape", i);
                int v = (ddd[0] - '0') * 100 + (ddd[1] - '0') * 10 + (ddd[2] - '0');
                if (v > 255) throw WireError("bad \\DDD escape", i);
                cur.push_back(static_cast<char>(v));
                i += 3;
            } else {
                cur.push_back(name[++i]);
            }
        } else if (c == '.') {
            if (cur.empty()) throw WireError("empty label", i);
            labels.push_back(std::move(cur));
            cur.clear();
            if (i + 1 == name.size()) return labels;  // trailing dot
        } else {
            cur.push_back(c);
        }
    }
    if (cur.empty()) throw WireError("empty label", name.size());
    labels.push_back(std::move(cur));
    return labels;
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out.push_back('.');
        for (unsigned char c : labels[i]) {
            if (c == '.' || c == '\\') {
                out.push_back('\\');
                out.push_back(static_cast<char>(c));
            } else if (c < 0x21 || c > 0x7E) {
                char buf[5];
                std::snprintf(buf, sizeof buf, "\\%03u", c);
                out += buf;
            } else {
                out.push_back(static_cast<char>(c));
            }
        }
    }
    return out;
}

Bytes encode_name(std::string_view name) {
    auto labels = split_name(name);
    check_labels(labels, 0);
    Bytes out;
    write_plain_name(out, labels);
    return out;
}

Bytes encode_message(const Message& m) {
    Encoder e;
    auto count = [](std::size_t n) {
        if (n > 0xFFFF) throw WireError("section too large", 0);
        return static_cast<std::uint16_t>(n);
    };
    e.u16(m.header.id);
    e.u16(m.header.flags());
    e.u16(count(m.questions.size()));
    e.u16(count(m.answers.size()));
    e.u16(count(m.authority.size()));
    e.u16(count(m.additional.size()));
    for (const auto& q : m.questions) {
        e.name(split_name(q.name));
        e.u16(q.qtype);
        e.u16(q.qclass);
    }
    for (const auto* sec : {&m.answers, &m.authority, &m.additional})
        for (const auto& rr : *sec) encode_rr(e, rr);
    if (e.out.size() > kMaxMessageSize) throw WireError("message larger than 65535 bytes", e.out.size());
    return std::move(e.out);
}

Bytes encode_message(const Message& m, std::size_t limit) {
    auto full = encode_message(m);
    if (full.size() <= limit) return full;
    // Compression only refers backwards, so a prefix of the encoding is the
    // encoding of a prefix of the records. Find the last boundary that fits.
    Encoder e;
    e.out.assign(full.begin(), full.begin() + 12);
    for (const auto& q : m.questions) {
        e.name(split_name(q.name));
        e.u16(q.qtype);
        e.u16(q.qclass);
    }
    std::size_t kept[3] = {0, 0, 0};
    std::size_t cut = e.out.size();
    bool full_stop = false;
    const std::vector<ResourceRecord>* secs[3] = {&m.answers, &m.authority, &m.additional};
    for (int s = 0; s < 3 && !full_stop; ++s) {
        for (const auto& rr : *secs[s]) {
            encode_rr(e, rr);
            if (e.out.size() > limit) {
                full_stop = true;
                break;
            }
            cut = e.out.size();
            ++kept[s];
        }
    }
    Bytes out(e.out.begin(), e.out.begin() + static_cast<std::ptrdiff_t>(std::min(cut, e.out.size())));
    if (out.size() > limit) out.resize(12);  // questions alone do not fit
    if (out.size() == 12) kept[0] = kept[1] = kept[2] = 0;
    auto h = m.header;
    h.tc = true;
    auto f = h.flags();
    out[2] = static_cast<std::uint8_t>(f >> 8);
    out[3] = static_cast<std::uint8_t>(f);
    if (out.size() == 12) out[4] = out[5] = 0;
    for (int s = 0; s < 3; ++s) {
        out[6 + 2 * s] = static_cast<std::uint8_t>(kept[s] >> 8);
        out[7 + 2 * s] = static_cast<std::uint8_t>(kept[s]);
    }
    return out;
}

Message decode_message(ByteView wire) {
    if (wire.size() > kMaxMessageSize) throw WireError("message larger than 65535 bytes", 0);
    Decoder d(wire);
    Message m;
    auto id = d.u16();
    m.header = Header::from_flags(id, d.u16());
    std::size_t counts[4];
    for (auto& c : counts) c = d.u16();
    // Each entry needs at least 5 (question) or 11 (record) bytes.
    if (counts[0] * 5 + (counts[1] + counts[2] + counts[3]) * 11 > wire.size() - 12)
        throw WireError("section counts exceed message", 4);
    for (std::size_t i = 0; i < counts[0]; ++i) {
        Question q;
        q.name = join_labels(d.name());
        q.qtype = d.u16();
        q.qclass = d.u16();
        m.questions.push_back(std::move(q));
    }
    std::vector<ResourceRecord>* secs[3] = {&m.answers, &m.authority, &m.additional};
    for (int s = 0; s < 3; ++s)
        for (std::size_t i = 0; i < counts[s + 1]; ++i) secs[s]->push_back(decode_rr(d));
    if (d.pos != d.size()) throw WireError("trailing bytes", d.pos);
    return m;
}

std::string rdata_to_text(const ResourceRecord& rr) {
    ByteView rd = rr.rdata;
    auto generic = [&] { return "\\# " + std::to_string(rd.size()) + (rd.empty() ? "" : " " + to_hex(rd)); };
    auto u16at = [&](std::size_t p) { return static_cast<unsigned>(rd[p] << 8 | rd[p + 1]); };
    auto u32at = [&](std::size_t p) { return static_cast<unsigned long>(u16at(p)) << 16 | u16at(p + 2); };
    auto quoted = [](std::string_view s) {
        std::string out = "\"";
        for (unsigned char c : s) {
            if (c == '"' || c == '\\') {
                out.push_back('\\');
                out.push_back(static_cast<char>(c));
            } else if (c < 0x20 || c > 0x7E) {
                char buf[5];
                std::snprintf(buf, sizeof buf, "\\%03u", c);
                out += buf;
            } else {
                out.push_back(static_cast<char>(c));
            }
        }
        return out + "\"";
    };
    try {
        std::size_t p = 0;
        switch (rr.rtype) {
            case type::A: {
                if (rd.size() != 4) return generic();
                char buf[INET_ADDRSTRLEN];
                inet_ntop(AF_INET, rd.data(), buf, sizeof buf);
                return buf;
            }
            case type::AAAA: {
                if (rd.size() != 16) return generic();
                char buf[INET6_ADDRSTRLEN];
                inet_ntop(AF_INET6, rd.data(), buf, sizeof buf);
                return buf;
            }
            case type::NS:
            case type::CNAME:
            case type::PTR:
                return join_labels(read_plain_name(rd, p)) + ".";
            case type::MX: {
                if (rd.size() < 3) return generic();
                p = 2;
                return std::to_string(u16at(0)) + " " + join_labels(read_plain_name(rd, p)) + ".";
            }
            case type::SOA: {
                auto m = join_labels(read_plain_name(rd, p)) + ".";
                auto r = join_labels(read_plain_name(rd, p)) + ".";
                if (rd.size() - p != 20) return generic();
                std::string out = m + " " + r;
                for (int i = 0; i < 5; ++i) out += " " + std::to_string(u32at(p + 4 * static_cast<std::size_t>(i)));
                return out;
            }
            case type::TXT:
            case type::SPF:
            case type::HINFO: {
                std::string out;
                while (p < rd.size()) {
                    std::size_t n = rd[p++];
                    if (p + n > rd.size()) return generic();
                    if (!out.empty()) out.push_back(' ');
                    out += quoted(std::string_view(reinterpret_cast<const char*>(rd.data() + p), n));
                    p += n;
                }
                return out;
            }
            case type::SRV: {
                if (rd.size() < 7) return generic();
                p = 6;
                return std::to_string(u16at(0)) + " " + std::to_string(u16at(2)) + " " + std::to_string(u16at(4)) + " " +
                       join_labels(read_plain_name(rd, p)) + ".";
            }
            case type::CAA: {
                if (rd.size() < 2 || rd.size() < 2u + rd[1]) return generic();
                std::string tag(reinterpret_cast<const char*>(rd.data() + 2), rd[1]);
                std::string value(reinterpret_cast<const char*>(rd.data() + 2 + rd[1]), rd.size() - 2 - rd[1]);
                return std::to_string(rd[0]) + " " + tag + " " + quoted(value);
            }
            default:
                return generic();
        }
    } catch (const WireError&) {
        return generic();
    }
}

Message make_query(std::string_view name, std::uint16_t qtype, std::uint16_t id) {
    Message m;
    m.header.id = id;
    m.header.rd = true;
    m.questions.push_back({std::string(name), qtype, kClassIn});
    return m;
}

}  // namespace ddns::dns
