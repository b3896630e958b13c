#pragma once

#include "ddns/crypto/uint256.hpp"

#include <cstdint>

namespace ddns::chain {

inline constexpr std::int64_t kCoin = 100'000'000;
inline constexpr std::int64_t kMaxMoney = 21'000'000'000LL * kCoin;
inline constexpr std::uint64_t kWeightPerByte = 4;

struct ChainParams {
    std::uint64_t max_block_weight = 4'000'000;
    std::uint64_t target_spacing = 15;
    std::size_t difficulty_window = 30;
    double smoothing = 0.25;
    crypto::U256 pow_limit = crypto::U256::max();
    crypto::U256 genesis_target = crypto::U256::max();
    std::uint64_t genesis_timestamp = 1'700'000'000;
    std::int64_t block_subsidy = 100 * kCoin;
    std::int64_t registration_fee = kCoin / 10;
    /// When false every block must carry genesis_target.
    bool retarget = true;
    std::uint64_t max_future_drift = 120;
    std::size_t median_time_span = 11;

    /// Desk defaults: a target that takes a few thousand hashes.
    static ChainParams desk();
    /// All-ones target and no retargeting; for tests and scripted scenarios.
    static ChainParams trivial();
};

}  // namespace ddns::chain
