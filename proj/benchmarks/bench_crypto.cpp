#include "ddns/chain/block.hpp"
#include "ddns/content/content_id.hpp"
#include "ddns/crypto/hash.hpp"
#include "ddns/crypto/secp256k1.hpp"

#include <benchmark/benchmark.h>

using namespace ddns;

namespace {

Bytes payload(std::size_t n) {
    Bytes b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(i * 31 + 7);
    return b;
}

void BM_Sha256(benchmark::State& state) {
    auto data = payload(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(crypto::sha256(data));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(4096)->Arg(1 << 20);

void BM_ContentId(benchmark::State& state) {
    auto data = payload(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(content::content_id_of(data));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ContentId)->Arg(512)->Arg(16384);

void BM_EcdsaSign(benchmark::State& state) {
    auto kp = crypto::generate_keypair();
    auto msg = payload(200);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::sign(kp.secret_key, msg));
}
BENCHMARK(BM_EcdsaSign);

void BM_EcdsaVerify(benchmark::State& state) {
    auto kp = crypto::generate_keypair();
    auto msg = payload(200);
    auto sig = crypto::sign(kp.secret_key, msg);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::verify(kp.public_key, msg, sig));
}
BENCHMARK(BM_EcdsaVerify);

// Header hashes per second, the miner's inner loop.
void BM_HeaderHash(benchmark::State& state) {
    chain::BlockHeader h;
    h.height = 1;
    for (auto _ : state) {
        ++h.nonce;
        benchmark::DoNotOptimize(h.hash());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_HeaderHash);

}  // namespace
