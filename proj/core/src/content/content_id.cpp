#include "ddns/content/content_id.hpp"

#include "ddns/crypto/base58.hpp"
#include "ddns/crypto/hash.hpp"

#include <algorithm>

namespace ddns::content {

namespace {
constexpr std::uint8_t kSha256Code = 0x12;
constexpr std::uint8_t kDigestLength = 0x20;
}  // namespace

ContentId ContentId::from_digest(const Hash256& digest) {
    Bytes mh{kSha256Code, kDigestLength};
    mh.insert(mh.end(), digest.data.begin(), digest.data.end());
    ContentId id;
    id.text_ = crypto::base58_encode(mh);
    id.digest_ = digest;
    return id;
}

std::optional<ContentId> ContentId::try_parse(std::string_view text) {
    if (text.empty() || text.size() > 64) return std::nullopt;
    auto raw = crypto::base58_decode(text);
    if (!raw || raw->size() != 34 || (*raw)[0] != kSha256Code || (*raw)[1] != kDigestLength) return std::nullopt;
    Hash256 d;
    std::copy(raw->begin() + 2, raw->end(), d.data.begin());
    auto id = from_digest(d);
    // Reject non-canonical spellings (none exist for base58 without leading
    // zeros, but keep the check cheap and explicit).
    if (id.text_ != text) return std::nullopt;
    return id;
}

ContentId ContentId::parse(std::string_view text) {
    auto id = try_parse(text);
    if (!id) throw InvalidContentId("malformed content id: " + std::string(text));
    return *id;
}

ContentId content_id_of(ByteView payload) { return ContentId::from_digest(crypto::sha256(payload)); }

bool verify_integrity(const ContentId& id, ByteView payload) { return crypto::sha256(payload) == id.digest(); }

bool verify_integrity(std::string_view id_text, ByteView payload) {
    return verify_integrity(ContentId::parse(id_text), payload);
}

}  // namespace ddns::content
