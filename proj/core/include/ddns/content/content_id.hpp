#pragma once

#include "ddns/common/bytes.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace ddns::content {

class InvalidContentId : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base58btc text of the 34-byte multihash 0x12 0x20 || SHA-256(payload).
class ContentId {
public:
    ContentId() = default;

    /// Throws InvalidContentId unless the text decodes to a sha2-256 multihash.
    static ContentId parse(std::string_view text);
    static std::optional<ContentId> try_parse(std::string_view text);
    static ContentId from_digest(const Hash256& digest);

    const std::string& text() const { return text_; }
    const Hash256& digest() const { return digest_; }
    bool empty() const { return text_.empty(); }

    friend bool operator==(const ContentId& a, const ContentId& b) { return a.digest_ == b.digest_ && a.text_ == b.text_; }
    friend auto operator<=>(const ContentId& a, const ContentId& b) { return a.text_ <=> b.text_; }

private:
    std::string text_;
    Hash256 digest_;
};

ContentId content_id_of(ByteView payload);

/// True iff content_id_of(payload) == id.
bool verify_integrity(const ContentId& id, ByteView payload);
/// Parses the id text first; malformed text throws InvalidContentId.
bool verify_integrity(std::string_view id_text, ByteView payload);

}  // namespace ddns::content
