#include "ddns/dns/message.hpp"
#include "ddns/dns/rdata.hpp"
#include "ddns/zone/control_file.hpp"

#include "dns_random.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace ddns;
using namespace ddns::dns;
using nlohmann::json;

namespace {

Message from_description(const json& d) {
    Message m;
    m.header = Header::from_flags(d["id"].get<std::uint16_t>(), d["flags"].get<std::uint16_t>());
    for (const auto& q : d["questions"])
        m.questions.push_back({q["name"].get<std::string>(), q["type"].get<std::uint16_t>(), q["class"].get<std::uint16_t>()});
    auto rrs = [](const json& arr, std::vector<ResourceRecord>& out) {
        for (const auto& r : arr)
            out.push_back({r["name"].get<std::string>(), r["type"].get<std::uint16_t>(), r["class"].get<std::uint16_t>(),
                           r["ttl"].get<std::uint32_t>(), from_hex(r["rdata"].get<std::string>())});
    };
    rrs(d["answers"], m.answers);
    rrs(d["authority"], m.authority);
    rrs(d["additional"], m.additional);
    return m;
}

}  // namespace

TEST(Wire, GoldenMessages) {
    auto golden = json::parse(fixture::read_fixture("dns_golden.json"));
    ASSERT_GE(golden.size(), 6u);
    for (const auto& g : golden) {
        auto wire = from_hex(g["wire"].get<std::string>());
        auto m = from_description(g["message"]);
        EXPECT_EQ(to_hex(encode_message(m)), to_hex(wire)) << g["name"];
        EXPECT_EQ(decode_message(wire), m) << g["name"];
    }
}

TEST(Wire, MinimalQueryIsThirtyBytes) {
    auto q = make_query("example.ddns", type::A, 0x1234);
    auto wire = encode_message(q);
    EXPECT_EQ(wire.size(), 30u);
    EXPECT_EQ(to_hex(wire), "123401000001000000000000076578616d706c650464646e730000010001");
}

TEST(Wire, RdataMatchesOracle) {
    auto golden = json::parse(fixture::read_fixture("rdata_golden.json"));
    auto corpus = json::parse(fixture::read_fixture("record_corpus.json"));
    ASSERT_EQ(golden.size(), 20u);
    for (auto t : zone::kAllRecordTypes) {
        auto name = std::string(zone::type_name(t));
        auto rep = zone::validate_record(t, corpus[name]["accept"]);
        ASSERT_TRUE(rep.ok()) << name;
        EXPECT_EQ(wire_type(t), golden[name]["type"].get<std::uint16_t>()) << name;
        EXPECT_EQ(to_hex(encode_rdata(*rep.entry, "example.ddns")), golden[name]["rdata"].get<std::string>()) << name;
        // And the record survives a message round trip.
        Message m;
        m.header.qr = true;
        m.answers.push_back(to_resource_record(*rep.entry, "example.ddns", "example.ddns"));
        EXPECT_EQ(decode_message(encode_message(m)), m) << name;
    }
}

TEST(Wire, RandomRoundTrip) {
    fixture::RandomMessages gen(1);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        auto m = gen.next();
        auto wire = encode_message(m);
        if (decode_message(wire) != m) ++mismatches;
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(Wire, CompressionShrinksRepeatedNames) {
    Message m;
    m.header.qr = true;
    m.questions.push_back({"www.example.ddns", type::A, kClassIn});
    for (int i = 0; i < 5; ++i) m.answers.push_back({"www.example.ddns", type::A, kClassIn, 60, {1, 2, 3, static_cast<std::uint8_t>(i)}});
    auto wire = encode_message(m);
    EXPECT_EQ(wire.size(), 12u + 18 + 4 + 5 * (2 + 10 + 4));
}

TEST(Wire, PointerLoopsRejected) {
    // Header with one question whose name is a pointer to itself.
    Bytes self = {0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0xC0, 12, 0, 1, 0, 1};
    EXPECT_THROW(decode_message(self), WireError);
    // Forward pointer.
    Bytes fwd = {0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0xC0, 14, 0, 0, 1, 0, 1};
    EXPECT_THROW(decode_message(fwd), WireError);
    // Two names pointing at each other: the second is a backward pointer to
    // the first, which is itself a forward pointer.
    Bytes mutual = {0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0xC0, 18, 0, 1, 0, 1, 0xC0, 12, 0, 1, 0, 1};
    EXPECT_THROW(decode_message(mutual), WireError);
    // Reserved label type.
    Bytes ext = {0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0x41, 0, 0, 1, 0, 1};
    EXPECT_THROW(decode_message(ext), WireError);
}

TEST(Wire, MalformedInputs) {
    auto good = encode_message(make_query("example.ddns", type::A, 1));
    for (std::size_t n = 0; n < good.size(); ++n)
        EXPECT_THROW(decode_message(ByteView(good.data(), n)), WireError) << n;
    auto trailing = good;
    trailing.push_back(0);
    EXPECT_THROW(decode_message(trailing), WireError);
    Bytes huge_counts = {0, 1, 0, 0, 0xFF, 0xFF, 0xFF, 0xFF, 0, 0, 0, 0};
    EXPECT_THROW(decode_message(huge_counts), WireError);
    // Names that cannot be encoded.
    EXPECT_THROW(encode_message(make_query(std::string(64, 'a') + ".ddns", type::A, 1)), WireError);
    std::string long_name;
    for (int i = 0; i < 50; ++i) long_name += "abcd.";
    long_name += "ddns";
    EXPECT_THROW(encode_message(make_query(long_name, type::A, 1)), WireError);
    EXPECT_THROW(encode_message(make_query("a..b", type::A, 1)), WireError);
}

TEST(Wire, FuzzDecoderNeverCrashes) {
    std::mt19937_64 rng(77);
    auto seed = encode_message(fixture::RandomMessages(3).next());
    int parsed = 0;
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 20000; ++i) {
        Bytes input;
        if (i % 2) {
            input.resize(rng() % 600);
            for (auto& b : input) b = static_cast<std::uint8_t>(rng());
        } else {
            input = seed;
            for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k)
                if (!input.empty()) input[rng() % input.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        }
        try {
            auto m = decode_message(input);
            ++parsed;
            // Anything that decodes re-encodes to something that decodes the same.
            EXPECT_EQ(decode_message(encode_message(m)), m);
        } catch (const WireError&) {
        }
    }
    EXPECT_GT(parsed, 0);
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(30));
}

TEST(Wire, TruncationAtRecordBoundary) {
    Message m;
    m.header.id = 5;
    m.header.qr = true;
    m.questions.push_back({"big.ddns", type::TXT, kClassIn});
    for (int i = 0; i < 20; ++i) {
        ResourceRecord rr{"big.ddns", type::TXT, kClassIn, 60, {}};
        rr.rdata.push_back(60);
        rr.rdata.insert(rr.rdata.end(), 60, static_cast<std::uint8_t>('a' + i));
        m.answers.push_back(rr);
    }
    auto full = encode_message(m);
    ASSERT_GT(full.size(), kUdpLimit);
    auto cut = encode_message(m, kUdpLimit);
    EXPECT_LE(cut.size(), kUdpLimit);
    auto d = decode_message(cut);
    EXPECT_TRUE(d.header.tc);
    EXPECT_GT(d.answers.size(), 0u);
    EXPECT_LT(d.answers.size(), m.answers.size());
    for (std::size_t i = 0; i < d.answers.size(); ++i) EXPECT_EQ(d.answers[i], m.answers[i]);
    EXPECT_EQ(d.questions, m.questions);
    // Small enough: untouched.
    m.answers.resize(2);
    EXPECT_FALSE(decode_message(encode_message(m, kUdpLimit)).header.tc);
}

TEST(Wire, NameEscapes) {
    std::vector<std::string> labels = {"a.b", "c\\d", std::string("\x00\xff", 2), "plain"};
    auto text = join_labels(labels);
    EXPECT_EQ(text, "a\\.b.c\\\\d.\\000\\255.plain");
    EXPECT_EQ(split_name(text), labels);
    EXPECT_EQ(split_name("example.ddns."), split_name("example.ddns"));
    EXPECT_TRUE(split_name("").empty());
    EXPECT_THROW(split_name("a\\256"), WireError);
}

TEST(Wire, PresentationText) {
    auto corpus = json::parse(fixture::read_fixture("record_corpus.json"));
    auto text = [&](const char* t) {
        auto rep = zone::validate_record(t, corpus[t]["accept"]);
        return rdata_to_text(to_resource_record(*rep.entry, "example.ddns", "example.ddns"));
    };
    EXPECT_EQ(text("A"), "192.168.1.100");
    EXPECT_EQ(text("AAAA"), "2001:db8::1");
    EXPECT_EQ(text("CNAME"), "example.ddns.");
    EXPECT_EQ(text("MX"), "10 mail.example.ddns.");
    EXPECT_EQ(text("TXT"), "\"hello\" \"world\"");
    EXPECT_EQ(text("SRV"), "10 5 5060 sip.example.ddns.");
    EXPECT_EQ(text("CAA"), "0 issue \"letsencrypt.org\"");
    EXPECT_EQ(text("SOA"), "ns1.example.ddns. hostmaster.example.ddns. 2024010101 7200 3600 1209600 300");
    EXPECT_EQ(type_from_text("mx"), type::MX);
    EXPECT_EQ(type_from_text("TYPE65280"), 65280);
    EXPECT_EQ(type_to_text(65280), "TYPE65280");
    EXPECT_EQ(type_from_text("BOGUS"), std::nullopt);
}
