#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ddns::crypto {

/// Unsigned 256-bit integer, four little-endian 64-bit limbs. Used for curve
/// arithmetic and proof-of-work targets.
struct U256 {
    std::array<std::uint64_t, 4> limb{};

    static constexpr U256 from_u64(std::uint64_t v) { return U256{{v, 0, 0, 0}}; }
    static U256 from_be(std::span<const std::uint8_t, 32> bytes);
    static U256 from_hex(std::string_view hex);
    static constexpr U256 max() {
        return U256{{~0ull, ~0ull, ~0ull, ~0ull}};
    }

    std::array<std::uint8_t, 32> to_be() const;
    std::string hex() const;
    double to_double() const;

    bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }
    bool bit(unsigned i) const { return (limb[i / 64] >> (i % 64)) & 1u; }
    /// Index of the highest set bit plus one; zero for zero.
    unsigned bit_length() const;

    friend std::strong_ordering operator<=>(const U256& a, const U256& b) {
        for (int i = 3; i >= 0; --i)
            if (a.limb[i] != b.limb[i]) return a.limb[i] <=> b.limb[i];
        return std::strong_ordering::equal;
    }
    friend bool operator==(const U256&, const U256&) = default;
};

/// a + b; carry receives the overflow bit.
U256 add(const U256& a, const U256& b, std::uint64_t& carry);
/// a - b; borrow receives the underflow bit.
U256 sub(const U256& a, const U256& b, std::uint64_t& borrow);
U256 shl(const U256& a, unsigned n);
U256 shr(const U256& a, unsigned n);

/// Full 512-bit product, little-endian limbs.
std::array<std::uint64_t, 8> mul_wide(const U256& a, const U256& b);

/// floor(a * num / den), saturating at U256::max().
U256 mul_div(const U256& a, std::uint64_t num, std::uint64_t den);

/// floor(a / d) for a 64-bit divisor.
U256 div_u64(const U256& a, std::uint64_t d);

}  // namespace ddns::crypto
