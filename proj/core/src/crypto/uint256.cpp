#include "ddns/crypto/uint256.hpp"

#include "ddns/common/bytes.hpp"

#include <cmath>
#include <stdexcept>

namespace ddns::crypto {

using u128 = unsigned __int128;

U256 U256::from_be(std::span<const std::uint8_t, 32> b) {
    U256 x;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t w = 0;
        for (int j = 0; j < 8; ++j) w = (w << 8) | b[static_cast<std::size_t>(i * 8 + j)];
        x.limb[static_cast<std::size_t>(3 - i)] = w;
    }
    return x;
}

U256 U256::from_hex(std::string_view hex) {
    if (hex.size() > 64) throw std::invalid_argument("U256 hex longer than 64 digits");
    std::string padded(64 - hex.size(), '0');
    padded.append(hex);
    auto bytes = ddns::from_hex(padded);
    return from_be(std::span<const std::uint8_t, 32>(bytes.data(), 32));
}

std::array<std::uint8_t, 32> U256::to_be() const {
    std::array<std::uint8_t, 32> out{};
    for (int i = 0; i < 4; ++i) {
        std::uint64_t w = limb[static_cast<std::size_t>(3 - i)];
        for (int j = 7; j >= 0; --j) {
            out[static_cast<std::size_t>(i * 8 + j)] = static_cast<std::uint8_t>(w);
            w >>= 8;
        }
    }
    return out;
}

std::string U256::hex() const { return to_hex(to_be()); }

double U256::to_double() const {
    double v = 0;
    for (int i = 3; i >= 0; --i) v = v * 18446744073709551616.0 + static_cast<double>(limb[static_cast<std::size_t>(i)]);
    return v;
}

unsigned U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limb[static_cast<std::size_t>(i)] != 0)
            return static_cast<unsigned>(i * 64 + 64 - __builtin_clzll(limb[static_cast<std::size_t>(i)]));
    }
    return 0;
}

U256 add(const U256& a, const U256& b, std::uint64_t& carry) {
    U256 r;
    u128 c = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        c += static_cast<u128>(a.limb[i]) + b.limb[i];
        r.limb[i] = static_cast<std::uint64_t>(c);
        c >>= 64;
    }
    carry = static_cast<std::uint64_t>(c);
    return r;
}

U256 sub(const U256& a, const U256& b, std::uint64_t& borrow) {
    U256 r;
    std::uint64_t br = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        u128 d = static_cast<u128>(a.limb[i]) - b.limb[i] - br;
        r.limb[i] = static_cast<std::uint64_t>(d);
        br = static_cast<std::uint64_t>(d >> 64) & 1u;
    }
    borrow = br;
    return r;
}

U256 shl(const U256& a, unsigned n) {
    if (n >= 256) return {};
    U256 r;
    unsigned words = n / 64, bits = n % 64;
    for (int i = 3; i >= 0; --i) {
        int src = i - static_cast<int>(words);
        if (src < 0) continue;
        std::uint64_t v = a.limb[static_cast<std::size_t>(src)] << bits;
        if (bits != 0 && src > 0) v |= a.limb[static_cast<std::size_t>(src - 1)] >> (64 - bits);
        r.limb[static_cast<std::size_t>(i)] = v;
    }
    return r;
}

U256 shr(const U256& a, unsigned n) {
    if (n >= 256) return {};
    U256 r;
    unsigned words = n / 64, bits = n % 64;
    for (unsigned i = 0; i < 4; ++i) {
        unsigned src = i + words;
        if (src > 3) continue;
        std::uint64_t v = a.limb[src] >> bits;
        if (bits != 0 && src < 3) v |= a.limb[src + 1] << (64 - bits);
        r.limb[i] = v;
    }
    return r;
}

std::array<std::uint64_t, 8> mul_wide(const U256& a, const U256& b) {
    std::array<std::uint64_t, 8> r{};
    for (std::size_t i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            u128 t = static_cast<u128>(a.limb[i]) * b.limb[j] + r[i + j] + carry;
            r[i + j] = static_cast<std::uint64_t>(t);
            carry = t >> 64;
        }
        r[i + 4] = static_cast<std::uint64_t>(carry);
    }
    return r;
}

U256 div_u64(const U256& a, std::uint64_t d) {
    if (d == 0) throw std::domain_error("division by zero");
    U256 q;
    u128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        u128 cur = (rem << 64) | a.limb[static_cast<std::size_t>(i)];
        q.limb[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(cur / d);
        rem = cur % d;
    }
    return q;
}

U256 mul_div(const U256& a, std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::domain_error("division by zero");
    // 320-bit product held in five limbs, then long division by den.
    std::array<std::uint64_t, 5> p{};
    u128 carry = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        u128 t = static_cast<u128>(a.limb[i]) * num + carry;
        p[i] = static_cast<std::uint64_t>(t);
        carry = t >> 64;
    }
    p[4] = static_cast<std::uint64_t>(carry);
    std::array<std::uint64_t, 5> q{};
    u128 rem = 0;
    for (int i = 4; i >= 0; --i) {
        u128 cur = (rem << 64) | p[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(cur / den);
        rem = cur % den;
    }
    if (q[4] != 0) return U256::max();
    return U256{{q[0], q[1], q[2], q[3]}};
}

}  // namespace ddns::crypto
