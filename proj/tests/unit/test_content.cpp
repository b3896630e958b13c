#include "ddns/content/content_id.hpp"
#include "ddns/content/store.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <thread>

using namespace ddns;
using namespace ddns::content;

TEST(ContentId, KnownValues) {
    // Independent sha256 + base58 computation.
    EXPECT_EQ(content_id_of({}).text(), "QmdfTbBqBPQ7VNxZEYEj14VmRuZBkqFbiwReogJgS1zR1n");
    EXPECT_EQ(content_id_of(as_bytes("hello world")).text(), "QmaozNR7DZHQK1ZcU9p7QdrshMvXqWK6gpu5rmrkPdT3L4");
}

TEST(ContentId, ParseRoundTripAndRejects) {
    auto id = content_id_of(as_bytes("x"));
    EXPECT_EQ(ContentId::parse(id.text()), id);
    EXPECT_THROW(ContentId::parse(""), InvalidContentId);
    EXPECT_THROW(ContentId::parse("QmX7M8RxZ..."), InvalidContentId);
    EXPECT_THROW(ContentId::parse("QmX7M8RxZ"), InvalidContentId);
    EXPECT_THROW(verify_integrity("not-an-id", as_bytes("x")), InvalidContentId);
}

TEST(ContentId, BitFlipsDetected) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        Bytes p(1 + rng() % 300);
        for (auto& b : p) b = static_cast<std::uint8_t>(rng());
        auto id = content_id_of(p);
        EXPECT_TRUE(verify_integrity(id, p));
        for (std::size_t bit = 0; bit < p.size() * 8; ++bit) {
            p[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            ASSERT_FALSE(verify_integrity(id, p));
            p[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        }
    }
}

TEST(ContentStore, RoundTripAndIdempotence) {
    fixture::TempDir dir;
    ContentStore store(dir.path());
    Bytes payload = to_bytes("{\"version\":\"2.0\"}");
    auto id = store.put(payload);
    EXPECT_EQ(store.get(id), payload);
    EXPECT_EQ(store.object_count(), 1u);
    EXPECT_EQ(store.put(payload), id);
    EXPECT_EQ(store.object_count(), 1u);
    auto empty = store.put({});
    EXPECT_TRUE(store.get(empty).empty());
    EXPECT_EQ(store.object_count(), 2u);
}

TEST(ContentStore, NotFound) {
    fixture::TempDir dir;
    ContentStore store(dir.path());
    try {
        store.get(content_id_of(as_bytes("never stored")));
        FAIL();
    } catch (const StoreError& e) {
        EXPECT_EQ(e.code(), StoreError::Code::not_found);
    }
}

TEST(ContentStore, TamperedObjectIsCorruption) {
    fixture::TempDir dir;
    ContentStore store(dir.path());
    auto id = store.put(as_bytes("payload under test"));
    {
        std::fstream f(store.object_path(id), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(3);
        f.put('#');
    }
    try {
        store.get(id);
        FAIL();
    } catch (const StoreError& e) {
        EXPECT_EQ(e.code(), StoreError::Code::corruption);
    }
    // Re-putting the original bytes repairs the object.
    store.put(as_bytes("payload under test"));
    EXPECT_EQ(to_string(store.get(id)), "payload under test");
}

TEST(ContentStore, SurvivesReopen) {
    fixture::TempDir dir;
    ContentId id;
    {
        ContentStore store(dir.path());
        id = store.put(as_bytes("persist"));
    }
    ContentStore again(dir.path());
    EXPECT_EQ(again.object_count(), 1u);
    EXPECT_EQ(to_string(again.get(id)), "persist");
}

TEST(ContentStore, ConcurrentPutsAndGets) {
    fixture::TempDir dir;
    ContentStore store(dir.path());
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&store, t] {
            for (int i = 0; i < 50; ++i) {
                auto p = to_bytes("obj-" + std::to_string(i % 20));
                auto id = store.put(p);
                EXPECT_EQ(store.get(id), p) << t;
            }
        });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(store.object_count(), 20u);
}

TEST(ContentStore, UnavailableRoot) {
    EXPECT_THROW(ContentStore("/proc/definitely/not/writable"), StoreError);
}
