#include "ddns/resolver/cache.hpp"

#include "ddns/crypto/hash.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ddns::resolver {

namespace fs = std::filesystem;

namespace {

bool in_zone(std::string_view qname, std::string_view zone) {
    return qname == zone || (qname.size() > zone.size() && qname.ends_with(zone) && qname[qname.size() - zone.size() - 1] == '.');
}

bool depends_on(const std::vector<std::string>& zones, std::string_view zone) {
    for (const auto& z : zones)
        if (z == zone) return true;
    return false;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out.push_back(' ');
        out += s;
    }
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

constexpr std::string_view kMagic = "DDNSL2 1";

}  // namespace

Clock system_clock() {
    return [] {
        return std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
    };
}

std::string CacheKey::text() const { return qname + "|" + std::to_string(qtype); }

void age_answer(CachedAnswer& a, double now) {
    auto elapsed = static_cast<std::uint32_t>(std::clamp(std::floor(now - a.stored), 0.0, 4294967295.0));
    for (auto* sec : {&a.answers, &a.authority})
        for (auto& rr : *sec) rr.ttl = rr.ttl > elapsed ? rr.ttl - elapsed : 0;
}

MemoryCache::MemoryCache(std::size_t capacity, double ttl, Clock clock)
    : capacity_(capacity), ttl_(ttl), clock_(std::move(clock)) {}

std::optional<CachedAnswer> MemoryCache::get(const CacheKey& key) {
    std::lock_guard lock(mu_);
    auto it = slots_.find(key.text());
    if (it == slots_.end()) return std::nullopt;
    if (clock_() >= it->second.answer.expires) {
        order_.erase(it->second.pos);
        slots_.erase(it);
        return std::nullopt;
    }
    order_.splice(order_.begin(), order_, it->second.pos);
    return it->second.answer;
}

void MemoryCache::put(const CacheKey& key, CachedAnswer answer, double ttl) {
    if (capacity_ == 0) return;
    answer.expires = clock_() + std::min(ttl, ttl_);
    auto k = key.text();
    std::lock_guard lock(mu_);
    auto it = slots_.find(k);
    if (it != slots_.end()) {
        it->second.answer = std::move(answer);
        order_.splice(order_.begin(), order_, it->second.pos);
        return;
    }
    while (slots_.size() >= capacity_) {
        slots_.erase(order_.back());
        order_.pop_back();
    }
    order_.push_front(k);
    slots_.emplace(std::move(k), Slot{std::move(answer), order_.begin()});
}

void MemoryCache::erase_if(const std::function<bool(const std::string&, const CachedAnswer&)>& pred) {
    std::lock_guard lock(mu_);
    for (auto it = slots_.begin(); it != slots_.end();) {
        if (pred(it->first, it->second.answer)) {
            order_.erase(it->second.pos);
            it = slots_.erase(it);
        } else {
            ++it;
        }
    }
}

void MemoryCache::invalidate_name(std::string_view qname) {
    std::string prefix = std::string(qname) + "|";
    erase_if([&](const std::string& k, const CachedAnswer&) { return k.starts_with(prefix); });
}

void MemoryCache::invalidate_zone(std::string_view zone) {
    erase_if([&](const std::string& k, const CachedAnswer& a) {
        return in_zone(std::string_view(k).substr(0, k.rfind('|')), zone) || depends_on(a.zones, zone);
    });
}

std::size_t MemoryCache::size() const {
    std::lock_guard lock(mu_);
    return slots_.size();
}

void MemoryCache::clear() {
    std::lock_guard lock(mu_);
    slots_.clear();
    order_.clear();
}

// File layout:
//   DDNSL2 1\n <expires>\n <stored>\n <key>\n <zones>\n <content ids>\n <sha256 of body>\n <body>
// where body is a DNS message carrying rcode, answers and authority.
FileCache::FileCache(fs::path dir, Clock clock) : dir_(std::move(dir)), clock_(std::move(clock)) {
    fs::create_directories(dir_);
    for (const auto& ent : fs::directory_iterator(dir_)) {
        if (!ent.is_regular_file() || ent.path().extension() != ".l2") continue;
        std::ifstream in(ent.path(), std::ios::binary);
        std::string magic, expires, key, zones;
        std::string stored;
        if (!std::getline(in, magic) || magic != kMagic || !std::getline(in, expires) || !std::getline(in, stored) ||
            !std::getline(in, key) ||
            !std::getline(in, zones)) {
            std::cerr << "l2: dropping unreadable cache file " << ent.path().filename() << "\n";
            fs::remove(ent.path());
            ++corrupt_;
            continue;
        }
        index_[key] = IndexEntry{key.substr(0, key.rfind('|')), split(zones)};
    }
}

fs::path FileCache::path_for(const CacheKey& key) const {
    auto h = crypto::sha256(to_bytes(key.text()));
    return dir_ / (to_hex(ByteView(h.data.data(), 16)) + ".l2");
}

void FileCache::drop(const std::string& key_text, const fs::path& p) {
    std::error_code ec;
    fs::remove(p, ec);
    index_.erase(key_text);
}

std::optional<CachedAnswer> FileCache::get(const CacheKey& key) {
    std::lock_guard lock(mu_);
    auto k = key.text();
    if (!index_.count(k)) return std::nullopt;
    auto p = path_for(key);
    ++reads_;
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        index_.erase(k);
        return std::nullopt;
    }
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::istringstream hdr(contents);
    std::string magic, expires, stored, stored_key, zones, cids, digest;
    bool ok = std::getline(hdr, magic) && magic == kMagic && std::getline(hdr, expires) && std::getline(hdr, stored) &&
              std::getline(hdr, stored_key) && std::getline(hdr, zones) && std::getline(hdr, cids) &&
              std::getline(hdr, digest) && stored_key == k;
    CachedAnswer a;
    if (ok) {
        auto body_at = static_cast<std::size_t>(hdr.tellg());
        auto body = to_bytes(std::string_view(contents).substr(body_at));
        ok = to_hex(crypto::sha256(body).data) == digest;
        if (ok) {
            try {
                auto m = dns::decode_message(body);
                a.rcode = m.header.rcode;
                a.answers = std::move(m.answers);
                a.authority = std::move(m.authority);
                a.expires = std::stod(expires);
                a.stored = std::stod(stored);
            } catch (const std::exception&) {
                ok = false;
            }
        }
    }
    if (!ok) {
        std::cerr << "l2: dropping corrupt cache entry for " << k << "\n";
        ++corrupt_;
        drop(k, p);
        return std::nullopt;
    }
    if (clock_() >= a.expires) {
        drop(k, p);
        return std::nullopt;
    }
    a.zones = split(zones);
    a.content_ids = split(cids);
    return a;
}

void FileCache::put(const CacheKey& key, const CachedAnswer& answer) {
    dns::Message m;
    m.header.qr = true;
    m.header.rcode = answer.rcode;
    m.answers = answer.answers;
    m.authority = answer.authority;
    auto body = dns::encode_message(m);
    std::ostringstream out;
    char exp[32], at[32];
    std::snprintf(exp, sizeof exp, "%.3f", answer.expires);
    std::snprintf(at, sizeof at, "%.3f", answer.stored);
    out << kMagic << "\n"
        << exp << "\n"
        << at << "\n"
        << key.text() << "\n"
        << join(answer.zones) << "\n"
        << join(answer.content_ids) << "\n"
        << to_hex(crypto::sha256(body).data) << "\n";
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    auto p = path_for(key);
    auto tmp = p;
    tmp += ".tmp";
    std::lock_guard lock(mu_);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << out.str();
        if (!f) return;  // cache writes are best effort
    }
    fs::rename(tmp, p);
    index_[key.text()] = IndexEntry{key.qname, answer.zones};
}

void FileCache::invalidate_name(std::string_view qname) {
    std::lock_guard lock(mu_);
    for (auto it = index_.begin(); it != index_.end();) {
        if (it->second.qname == qname) {
            auto t = it->first.rfind('|');
            CacheKey k{it->second.qname, static_cast<std::uint16_t>(std::stoul(it->first.substr(t + 1)))};
            std::error_code ec;
            fs::remove(path_for(k), ec);
            it = index_.erase(it);
        } else {
            ++it;
        }
    }
}

void FileCache::invalidate_zone(std::string_view zone) {
    std::lock_guard lock(mu_);
    for (auto it = index_.begin(); it != index_.end();) {
        if (in_zone(it->second.qname, zone) || depends_on(it->second.zones, zone)) {
            auto t = it->first.rfind('|');
            CacheKey k{it->second.qname, static_cast<std::uint16_t>(std::stoul(it->first.substr(t + 1)))};
            std::error_code ec;
            fs::remove(path_for(k), ec);
            it = index_.erase(it);
        } else {
            ++it;
        }
    }
}

std::size_t FileCache::size() const {
    std::lock_guard lock(mu_);
    return index_.size();
}

std::uint64_t FileCache::file_reads() const {
    std::lock_guard lock(mu_);
    return reads_;
}

std::uint64_t FileCache::corrupt_dropped() const {
    std::lock_guard lock(mu_);
    return corrupt_;
}

BindingCache::BindingCache(double ttl, Clock clock) : ttl_(ttl), clock_(std::move(clock)) {}

std::optional<DomainBinding> BindingCache::get(const std::string& asset_name, double* expires) {
    std::lock_guard lock(mu_);
    auto it = entries_.find(asset_name);
    if (it == entries_.end()) return std::nullopt;
    if (clock_() >= it->second.second) {
        entries_.erase(it);
        return std::nullopt;
    }
    if (expires) *expires = it->second.second;
    return it->second.first;
}

void BindingCache::put(const std::string& asset_name, const DomainBinding& b) {
    std::lock_guard lock(mu_);
    entries_[asset_name] = {b, clock_() + ttl_};
}

void BindingCache::invalidate(const std::string& asset_name) {
    std::lock_guard lock(mu_);
    entries_.erase(asset_name);
}

std::size_t BindingCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

}  // namespace ddns::resolver
