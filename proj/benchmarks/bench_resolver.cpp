#include "ddns/content/store.hpp"
#include "ddns/registry/builders.hpp"
#include "ddns/resolver/resolver.hpp"
#include "ddns/zone/control_file.hpp"

#include "chain_harness.hpp"
#include "fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace ddns;

namespace {

// 50 registered domains on a local chain, control files in a real store.
struct World {
    fixture::TempDir dir;
    std::shared_ptr<content::ContentStore> store;
    fixture::ChainHarness chain;
    std::vector<std::string> names;

    World() : store(std::make_shared<content::ContentStore>(dir.path() / "store")) {
        auto owner = fixture::key(1);
        chain.mine_to(fixture::addr(owner));
        for (int i = 0; i < 50; ++i) {
            auto domain = "b" + std::to_string(i) + ".ddns";
            auto text = R"({"version":"2.0","domain":")" + domain +
                        R"(","records":{"@":{"A":[{"address":"10.1.0.)" + std::to_string(i) +
                        R"("}],"TXT":[{"text":"bench"}]},"www":{"CNAME":[{"target":")" + domain + R"("}]}}})";
            auto id = store->put(to_bytes(zone::serialize_canonical(zone::parse_control_file(text))));
            chain.submit(registry::register_domain(domain, id.text(), owner, chain.state(), chain.params));
            names.push_back("www." + domain);
        }
        chain.mine_to(fixture::addr(owner));
    }

    std::unique_ptr<resolver::Resolver> resolver(bool files) {
        resolver::ResolverConfig rc;
        if (files) rc.cache_dir = dir.path() / "cache";
        return std::make_unique<resolver::Resolver>(
            rc, std::make_shared<resolver::StateDirectory>(std::make_shared<chain::ChainState>(chain.state())),
            std::make_shared<resolver::StoreSource>(store));
    }
};

World& world() {
    static World w;
    return w;
}

// Every query misses: chain lookup, store read, integrity check, parse.
void BM_ResolveCold(benchmark::State& state) {
    auto& w = world();
    std::size_t i = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto r = w.resolver(false);
        state.ResumeTiming();
        benchmark::DoNotOptimize(r->resolve(w.names[i++ % w.names.size()], dns::type::A));
    }
}
BENCHMARK(BM_ResolveCold);

void BM_ResolveMemoryHit(benchmark::State& state) {
    auto& w = world();
    auto r = w.resolver(false);
    for (const auto& n : w.names) r->resolve(n, dns::type::A);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(r->resolve(w.names[i++ % w.names.size()], dns::type::A));
}
BENCHMARK(BM_ResolveMemoryHit);

// Memory tier empty, answers persisted by an earlier instance.
void BM_ResolveFileHit(benchmark::State& state) {
    auto& w = world();
    {
        auto warm = w.resolver(true);
        for (const auto& n : w.names) warm->resolve(n, dns::type::A);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto r = w.resolver(true);
        state.ResumeTiming();
        benchmark::DoNotOptimize(r->resolve(w.names[i++ % w.names.size()], dns::type::A));
    }
}
BENCHMARK(BM_ResolveFileHit);

void BM_HandleWire(benchmark::State& state) {
    auto& w = world();
    auto r = w.resolver(false);
    auto q = dns::encode_message(dns::make_query(w.names[0], dns::type::A, 9));
    for (auto _ : state) benchmark::DoNotOptimize(r->handle(q, 512));
}
BENCHMARK(BM_HandleWire);

}  // namespace
