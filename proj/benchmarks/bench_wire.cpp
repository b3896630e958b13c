#include "ddns/dns/message.hpp"

#include "dns_random.hpp"

#include <benchmark/benchmark.h>

using namespace ddns;

namespace {

std::vector<dns::Message> corpus() {
    fixture::RandomMessages gen(5);
    std::vector<dns::Message> out;
    for (int i = 0; i < 256; ++i) out.push_back(gen.next());
    return out;
}

void BM_Encode(benchmark::State& state) {
    auto msgs = corpus();
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(dns::encode_message(msgs[i++ % msgs.size()]));
}
BENCHMARK(BM_Encode);

void BM_Decode(benchmark::State& state) {
    std::vector<Bytes> wires;
    for (const auto& m : corpus()) wires.push_back(dns::encode_message(m));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(dns::decode_message(wires[i++ % wires.size()]));
}
BENCHMARK(BM_Decode);

void BM_QueryRoundTrip(benchmark::State& state) {
    auto q = dns::make_query("www.example.ddns", dns::type::A, 1);
    for (auto _ : state) benchmark::DoNotOptimize(dns::decode_message(dns::encode_message(q)));
}
BENCHMARK(BM_QueryRoundTrip);

}  // namespace
