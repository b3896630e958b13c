#pragma once

#include "ddns/chain/block.hpp"
#include "ddns/chain/params.hpp"

#include <span>

namespace ddns::chain {

/// Target for the block following `recent` (oldest first, at most
/// params.difficulty_window entries ending at the parent). Fewer than two
/// headers yields the genesis target.
///
/// Each block scales the parent's target by
///   exp(smoothing * (interval - spacing) / spacing)
/// where interval is the parent's solve time, so slow blocks raise the
/// threshold and fast ones lower it. The result never exceeds pow_limit.
crypto::U256 adjust_difficulty(std::span<const BlockHeader> recent, const ChainParams& params);

/// The per-block target multiplier for a parent solve time of `interval`
/// seconds (the exponent is clamped to +-4).
double retarget_factor(double interval, const ChainParams& params);

/// Median timestamp of the last `params.median_time_span` headers in `recent`.
std::uint64_t median_time_past(std::span<const BlockHeader> recent, const ChainParams& params);

/// pow_limit / target as a floating ratio; 1.0 at the easiest target.
double difficulty_of(const crypto::U256& target, const ChainParams& params);

}  // namespace ddns::chain
