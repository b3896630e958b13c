#include "ddns/chain/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ddns::chain {

namespace {
constexpr std::uint64_t kFixedOne = 1ull << 32;
// Bounds the per-block exponent; only reached for solve times far outside
// anything an exponential process with a 15 s mean produces.
constexpr double kMaxExponent = 4.0;
}  // namespace

ChainParams ChainParams::desk() {
    ChainParams p;
    p.pow_limit = crypto::shr(crypto::U256::max(), 8);
    p.genesis_target = crypto::shr(crypto::U256::max(), 12);
    return p;
}

ChainParams ChainParams::trivial() {
    ChainParams p;
    p.pow_limit = crypto::U256::max();
    p.genesis_target = crypto::U256::max();
    p.retarget = false;
    return p;
}

double retarget_factor(double interval, const ChainParams& params) {
    auto spacing = static_cast<double>(params.target_spacing);
    return std::exp(std::clamp(params.smoothing * (interval - spacing) / spacing, -kMaxExponent, kMaxExponent));
}

crypto::U256 adjust_difficulty(std::span<const BlockHeader> recent, const ChainParams& params) {
    if (!params.retarget || recent.size() < 2) return params.genesis_target;
    if (recent.size() > params.difficulty_window) recent = recent.subspan(recent.size() - params.difficulty_window);

    const auto& last = recent[recent.size() - 1];
    const auto& prev = recent[recent.size() - 2];
    auto interval = static_cast<double>(static_cast<std::int64_t>(last.timestamp - prev.timestamp));
    auto spacing = static_cast<double>(params.target_spacing);
    if (interval == spacing) return std::min(last.target, params.pow_limit);

    auto factor = static_cast<std::uint64_t>(std::llround(retarget_factor(interval, params) * static_cast<double>(kFixedOne)));
    auto next = crypto::mul_div(last.target, factor, kFixedOne);
    if (next.is_zero()) next = crypto::U256::from_u64(1);
    return std::min(next, params.pow_limit);
}

std::uint64_t median_time_past(std::span<const BlockHeader> recent, const ChainParams& params) {
    if (recent.empty()) return 0;
    auto n = std::min(recent.size(), params.median_time_span);
    std::vector<std::uint64_t> ts;
    for (std::size_t i = recent.size() - n; i < recent.size(); ++i) ts.push_back(recent[i].timestamp);
    std::sort(ts.begin(), ts.end());
    return ts[ts.size() / 2];
}

double difficulty_of(const crypto::U256& target, const ChainParams& params) {
    return params.pow_limit.to_double() / std::max(target.to_double(), 1.0);
}

}  // namespace ddns::chain
