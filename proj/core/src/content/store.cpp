#include "ddns/content/store.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

namespace ddns::content {

namespace fs = std::filesystem;

namespace {

std::int64_t unix_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

void write_all(int fd, const std::uint8_t* data, std::size_t n, const fs::path& p) {
    while (n > 0) {
        auto w = ::write(fd, data, n);
        if (w < 0) {
            if (errno == EINTR) continue;
            throw StoreError(StoreError::Code::unavailable, "write failed: " + p.string());
        }
        data += w;
        n -= static_cast<std::size_t>(w);
    }
}

}  // namespace

ContentStore::ContentStore(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_ / "objects", ec);
    if (ec) throw StoreError(StoreError::Code::unavailable, "cannot create store at " + root_.string() + ": " + ec.message());
    load_index();
}

void ContentStore::load_index() {
    std::ifstream in(root_ / "index");
    std::string line;
    while (std::getline(in, line)) {
        auto sp = line.find(' ');
        if (sp == std::string::npos) continue;
        known_.insert(line.substr(sp + 1));
    }
}

fs::path ContentStore::object_path(const ContentId& id) const {
    auto hex = id.digest().hex();
    return root_ / "objects" / hex.substr(0, 2) / hex.substr(2, 2) / id.text();
}

ContentId ContentStore::put(ByteView payload) {
    auto id = content_id_of(payload);
    auto path = object_path(id);

    std::lock_guard lock(mu_);
    std::error_code ec;
    if (fs::exists(path, ec)) {
        // Re-putting repairs a damaged object; intact objects are left alone.
        std::ifstream in(path, std::ios::binary);
        Bytes existing((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (verify_integrity(id, existing)) {
            if (known_.insert(id.text()).second) {
                std::ofstream idx(root_ / "index", std::ios::app);
                idx << unix_now() << ' ' << id.text() << '\n';
            }
            return id;
        }
    }

    fs::create_directories(path.parent_path(), ec);
    if (ec) throw StoreError(StoreError::Code::unavailable, "cannot create " + path.parent_path().string());

    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
    if (fd < 0) throw StoreError(StoreError::Code::unavailable, "cannot open " + tmp.string());
    try {
        write_all(fd, payload.data(), payload.size(), tmp);
        if (::fsync(fd) != 0) throw StoreError(StoreError::Code::unavailable, "fsync failed: " + tmp.string());
    } catch (...) {
        ::close(fd);
        ::unlink(tmp.c_str());
        throw;
    }
    ::close(fd);
    if (::rename(tmp.c_str(), path.c_str()) != 0) {
        ::unlink(tmp.c_str());
        throw StoreError(StoreError::Code::unavailable, "rename failed: " + path.string());
    }

    if (known_.insert(id.text()).second) {
        std::ofstream idx(root_ / "index", std::ios::app);
        idx << unix_now() << ' ' << id.text() << '\n';
        if (!idx) throw StoreError(StoreError::Code::unavailable, "index append failed");
    }
    return id;
}

StoredObject ContentStore::get_object(const ContentId& id) const {
    auto path = object_path(id);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::error_code ec;
        if (!fs::exists(root_, ec)) throw StoreError(StoreError::Code::unavailable, "store root missing: " + root_.string());
        throw StoreError(StoreError::Code::not_found, "no object " + id.text());
    }
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw StoreError(StoreError::Code::unavailable, "read failed: " + path.string());
    if (!verify_integrity(id, data)) throw StoreError(StoreError::Code::corruption, "integrity check failed for " + id.text());

    StoredObject obj;
    obj.content_id = id;
    obj.payload = std::move(data);
    struct stat st{};
    if (::stat(path.c_str(), &st) == 0) obj.created_at = st.st_mtime;
    return obj;
}

Bytes ContentStore::get(const ContentId& id) const { return get_object(id).payload; }

bool ContentStore::contains(const ContentId& id) const {
    std::error_code ec;
    return fs::exists(object_path(id), ec);
}

std::size_t ContentStore::object_count() const {
    std::lock_guard lock(mu_);
    return known_.size();
}

}  // namespace ddns::content
