#pragma once

#include "ddns/common/bytes.hpp"

#include <cstring>
#include <stdexcept>
#include <string>

namespace ddns {

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical binary encoding: little-endian fixed-width integers and
// u32-length-prefixed variable fields.
class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) { put_le(v, 2); }
    void u32(std::uint32_t v) { put_le(v, 4); }
    void u64(std::uint64_t v) { put_le(v, 8); }
    void i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v), 8); }
    void raw(ByteView b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void hash(const Hash256& h) { raw(h.data); }
    void bytes(ByteView b) {
        u32(static_cast<std::uint32_t>(b.size()));
        raw(b);
    }
    void str(std::string_view s) { bytes(as_bytes(s)); }

    const Bytes& data() const& { return buf_; }
    Bytes take() && { return std::move(buf_); }

private:
    void put_le(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    Bytes buf_;
};

class Reader {
public:
    explicit Reader(ByteView data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
    /// Boolean byte; anything other than 0 or 1 is a non-canonical encoding.
    bool flag() {
        auto v = u8();
        if (v > 1) throw DecodeError("non-canonical boolean");
        return v == 1;
    }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
    std::uint64_t u64() { return get_le(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(get_le(8)); }

    ByteView raw(std::size_t n) {
        need(n);
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    Hash256 hash() {
        Hash256 h;
        auto r = raw(32);
        std::memcpy(h.data.data(), r.data(), 32);
        return h;
    }
    Bytes bytes(std::size_t max_len = 1u << 24) {
        auto n = u32();
        if (n > max_len) throw DecodeError("length prefix exceeds limit");
        auto r = raw(n);
        return {r.begin(), r.end()};
    }
    std::string str(std::size_t max_len = 1u << 16) {
        auto b = bytes(max_len);
        return {b.begin(), b.end()};
    }

    bool empty() const { return pos_ == data_.size(); }
    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) throw DecodeError("unexpected end of input");
    }
    std::uint64_t get_le(int n) {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace ddns
