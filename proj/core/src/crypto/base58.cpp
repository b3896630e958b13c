#include "ddns/crypto/base58.hpp"

#include "ddns/crypto/hash.hpp"

#include <algorithm>
#include <array>

namespace ddns::crypto {

namespace {

constexpr std::string_view kAlphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

constexpr std::array<std::int8_t, 128> make_index() {
    std::array<std::int8_t, 128> idx{};
    for (auto& v : idx) v = -1;
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) idx[static_cast<std::size_t>(kAlphabet[i])] = static_cast<std::int8_t>(i);
    return idx;
}

constexpr auto kIndex = make_index();

}  // namespace

std::string base58_encode(ByteView data) {
    std::size_t zeros = 0;
    while (zeros < data.size() && data[zeros] == 0) ++zeros;
    // log(256)/log(58) ~ 1.365
    std::vector<std::uint8_t> digits(data.size() * 138 / 100 + 1);
    std::size_t len = 0;
    for (std::size_t i = zeros; i < data.size(); ++i) {
        unsigned carry = data[i];
        std::size_t j = 0;
        for (auto it = digits.rbegin(); (carry != 0 || j < len) && it != digits.rend(); ++it, ++j) {
            carry += 256u * *it;
            *it = static_cast<std::uint8_t>(carry % 58);
            carry /= 58;
        }
        len = j;
    }
    auto it = digits.begin() + static_cast<std::ptrdiff_t>(digits.size() - len);
    while (it != digits.end() && *it == 0) ++it;
    std::string out(zeros, '1');
    for (; it != digits.end(); ++it) out.push_back(kAlphabet[*it]);
    return out;
}

std::optional<Bytes> base58_decode(std::string_view text) {
    std::size_t zeros = 0;
    while (zeros < text.size() && text[zeros] == '1') ++zeros;
    // log(58)/log(256) ~ 0.733
    Bytes b256(text.size() * 733 / 1000 + 1);
    std::size_t len = 0;
    for (std::size_t i = zeros; i < text.size(); ++i) {
        auto c = static_cast<unsigned char>(text[i]);
        if (c >= 128 || kIndex[c] < 0) return std::nullopt;
        unsigned carry = static_cast<unsigned>(kIndex[c]);
        std::size_t j = 0;
        for (auto it = b256.rbegin(); (carry != 0 || j < len) && it != b256.rend(); ++it, ++j) {
            carry += 58u * *it;
            *it = static_cast<std::uint8_t>(carry % 256);
            carry /= 256;
        }
        len = j;
    }
    auto it = b256.begin() + static_cast<std::ptrdiff_t>(b256.size() - len);
    while (it != b256.end() && *it == 0) ++it;
    Bytes out(zeros, 0);
    out.insert(out.end(), it, b256.end());
    return out;
}

std::string base58check_encode(ByteView payload) {
    Bytes buf(payload.begin(), payload.end());
    auto check = double_sha256(payload);
    buf.insert(buf.end(), check.data.begin(), check.data.begin() + 4);
    return base58_encode(buf);
}

std::optional<Bytes> base58check_decode(std::string_view text) {
    auto raw = base58_decode(text);
    if (!raw || raw->size() < 4) return std::nullopt;
    ByteView body(raw->data(), raw->size() - 4);
    auto check = double_sha256(body);
    if (!std::equal(check.data.begin(), check.data.begin() + 4, raw->end() - 4)) return std::nullopt;
    return Bytes(body.begin(), body.end());
}

}  // namespace ddns::crypto
