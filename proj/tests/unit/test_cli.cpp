#include "ddns/crypto/address.hpp"
#include "ddns_cli/commands.hpp"
#include "ddns_cli/config.hpp"
#include "ddns_cli/data_dir.hpp"
#include "ddns_cli/errors.hpp"
#include "ddns_cli/keyfile.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace ddns;
using namespace ddns::cli;
namespace fs = std::filesystem;

namespace {

crypto::KeyPair key(std::uint8_t fill) {
    std::array<std::uint8_t, 32> seed;
    seed.fill(fill);
    return crypto::generate_keypair(std::span<const std::uint8_t, 32>(seed));
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ddns-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

int code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const CliError& e) {
        return e.code();
    }
    return kOk;
}

}  // namespace

TEST(KeyFile, RoundTripAndLayout) {
    auto k = key(7);
    auto bytes = encode_key_file(k);
    ASSERT_EQ(bytes.size(), kKeyFileSize);
    EXPECT_EQ(to_string(ByteView(bytes).first(8)), "DDNSKEY1");
    auto back = decode_key_file(bytes);
    EXPECT_EQ(back.secret_key, k.secret_key);
    EXPECT_EQ(back.public_key, k.public_key);
}

TEST(KeyFile, EveryBitFlipIsRejected) {
    auto bytes = encode_key_file(key(9));
    for (std::size_t i = 0; i < bytes.size() * 8; ++i) {
        auto bad = bytes;
        bad[i / 8] ^= static_cast<std::uint8_t>(1u << (i % 8));
        EXPECT_EQ(code_of([&] { decode_key_file(bad); }), kInvalidInput) << "bit " << i;
    }
    bytes.pop_back();
    EXPECT_EQ(code_of([&] { decode_key_file(bytes); }), kInvalidInput);
}

TEST(KeyFile, NoSilentOverwrite) {
    TempDir t;
    auto p = t.path / "k";
    write_key_file(p, key(1), false);
    EXPECT_EQ(code_of([&] { write_key_file(p, key(2), false); }), kInvalidInput);
    EXPECT_EQ(read_key_file(p).secret_key, key(1).secret_key);
    write_key_file(p, key(2), true);
    EXPECT_EQ(read_key_file(p).secret_key, key(2).secret_key);
    EXPECT_EQ(fs::status(p).permissions() & fs::perms::all, fs::perms::owner_read | fs::perms::owner_write);
}

TEST(Config, DefaultsAndPaths) {
    auto c = config_from_json(nlohmann::json::object(), "/base");
    finalize(c);
    EXPECT_EQ(c.data_dir, fs::path("/base/ddns-data"));
    EXPECT_EQ(c.store_dir, fs::path("/base/ddns-data/store"));
    EXPECT_EQ(c.resolver.cache_dir, fs::path("/base/ddns-data/cache"));
    EXPECT_EQ(c.resolver.l1_capacity, 50000u);
    EXPECT_EQ(c.genesis.profile, "fixed");

    auto j = to_json(c);
    auto back = config_from_json(j, "/elsewhere");
    EXPECT_EQ(to_json(back), j);
}

TEST(Config, ProblemsAreAggregated) {
    auto j = nlohmann::json::parse(R"({
        "datadir": "x",
        "genesis": {"profile": "turbo"},
        "resolver": {"l1_ttl": 0, "udp_port": "fifty", "upstream": "dns.example", "colour": 1}
    })");
    try {
        config_from_json(j, "/");
        FAIL() << "accepted";
    } catch (const CliError& e) {
        EXPECT_EQ(e.code(), kConfig);
        std::string m = e.what();
        for (const char* part : {"6 problems", "datadir: unknown", "genesis.profile", "resolver.l1_ttl",
                                 "resolver.udp_port: wrong type", "resolver.upstream", "resolver.colour"})
            EXPECT_NE(m.find(part), std::string::npos) << part << "\n" << m;
    }
}

TEST(Config, ProfilesMapToChainParams) {
    auto fixed = chain_params({"fixed", 5});
    EXPECT_FALSE(fixed.retarget);
    EXPECT_EQ(fixed.genesis_timestamp, 5u);
    EXPECT_TRUE(chain_params({"desk", 5}).retarget);
    EXPECT_EQ(chain_params({"trivial", 5}).genesis_target, crypto::U256::max());
}

TEST(DataDir, LockIsExclusive) {
    TempDir t;
    NodeConfig c;
    c.data_dir = t.path / "data";
    DataDir first(c);
    EXPECT_EQ(code_of([&] { DataDir second(c); }), kLocked);
}

TEST(DataDir, GenesisIsPinned) {
    TempDir t;
    NodeConfig c;
    c.data_dir = t.path / "data";
    { DataDir d(c); }
    c.genesis.profile = "trivial";
    EXPECT_EQ(code_of([&] { DataDir d(c); }), kConfig);
}

TEST(DataDir, MempoolAndChainPersist) {
    TempDir t;
    NodeConfig c;
    c.data_dir = t.path / "data";
    c.genesis.profile = "trivial";
    auto zone = t.path / "zone.json";
    std::ofstream(zone) << R"({"version":"2.0","domain":"a.ddns","records":{"@":{"A":[{"address":"1.2.3.4"}]}}})";
    auto keyfile = t.path / "k";
    write_key_file(keyfile, key(3), false);

    cmd_register(c, {"a.ddns", zone.string(), "", keyfile.string()});
    {
        DataDir d(c);
        EXPECT_EQ(d.restored_transactions(), 1u);
    }
    cmd_mine(c, {2, "", ""});
    DataDir d(c);
    EXPECT_EQ(d.node().chain().height(), 2u);
    EXPECT_EQ(d.node().mempool().size(), 0u);
    EXPECT_TRUE(d.node().state().find_asset("DDNS/A"));
}

TEST(Commands, AnalyzeMatchesTable) {
    EXPECT_EQ(cmd_analyze("tps", {"4000000", "240", "15"}).text, "1111.1\n");
    EXPECT_EQ(cmd_analyze("tps", {"4000000", "1000", "15"}).text, "266.7\n");
    EXPECT_EQ(cmd_analyze("failure", {"0.1", "0.2"}).text, "0.28\n");
    EXPECT_EQ(cmd_analyze("crossover", {"15", "15", "15"}).data["year"], 1);
    EXPECT_EQ(cmd_analyze("cost", {"traditional", "15", "15", "5"}).data["value"], 90.0);
    EXPECT_EQ(code_of([] { cmd_analyze("tps", {"4000000", "x", "15"}); }), kInvalidInput);
    EXPECT_EQ(code_of([] { cmd_analyze("tps", {"4000000", "240"}); }), kUsage);
    EXPECT_EQ(code_of([] { cmd_analyze("cost", {"traditional", "15", "15", "2.5"}); }), kInvalidInput);
}

TEST(Commands, ExitClassesAreStable) {
    EXPECT_STREQ(exit_class(kLocked), "locked");
    EXPECT_STREQ(exit_class(kDnsFailure), "dns_failure");
    EXPECT_STREQ(exit_class(99), "internal");
}
