#pragma once

#include "ddns/content/content_id.hpp"

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace ddns::content {

class StoreError : public std::runtime_error {
public:
    enum class Code { not_found, corruption, unavailable };

    StoreError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

struct StoredObject {
    ContentId content_id;
    Bytes payload;
    std::int64_t created_at = 0;
};

/// Directory-backed object store. Objects live at
/// <root>/objects/<hh>/<hh>/<content id>, where the fan-out digits are the
/// first two bytes of the SHA-256 digest in hex. <root>/index is an
/// append-only log of "<unix seconds> <content id>" lines.
class ContentStore {
public:
    explicit ContentStore(std::filesystem::path root);

    ContentId put(ByteView payload);
    /// Re-hashes on every read. Throws StoreError{not_found|corruption|unavailable}.
    Bytes get(const ContentId& id) const;
    StoredObject get_object(const ContentId& id) const;
    bool contains(const ContentId& id) const;
    std::size_t object_count() const;

    std::filesystem::path object_path(const ContentId& id) const;
    const std::filesystem::path& root() const { return root_; }

private:
    void load_index();

    std::filesystem::path root_;
    mutable std::mutex mu_;
    std::unordered_set<std::string> known_;
};

}  // namespace ddns::content
