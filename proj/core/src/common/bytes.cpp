#include "ddns/common/bytes.hpp"

#include <stdexcept>

namespace ddns {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

bool Hash256::is_zero() const {
    for (auto b : data)
        if (b != 0) return false;
    return true;
}

std::string Hash256::hex() const { return to_hex(data); }

Hash256 Hash256::from_hex(std::string_view hex) {
    auto b = ddns::from_hex(hex);
    if (b.size() != 32) throw std::invalid_argument("hash must be 32 bytes");
    Hash256 h;
    std::copy(b.begin(), b.end(), h.data.begin());
    return h;
}

}  // namespace ddns
