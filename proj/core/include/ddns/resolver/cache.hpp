#pragma once

#include "ddns/dns/message.hpp"

#include <filesystem>
#include <functional>
#include <list>
#include <map>
#include <mutex>
#include <unordered_map>

namespace ddns::resolver {

/// Seconds; wall clock by default, injectable for simulated time.
using Clock = std::function<double()>;
Clock system_clock();

struct CacheKey {
    std::string qname;  // lowercase, no trailing dot
    std::uint16_t qtype = 0;

    std::string text() const;
    bool operator==(const CacheKey&) const = default;
};

struct CachedAnswer {
    dns::Rcode rcode = dns::Rcode::noerror;
    std::vector<dns::ResourceRecord> answers, authority;
    /// Registered domains the answer was derived from, for invalidation.
    std::vector<std::string> zones;
    std::vector<std::string> content_ids;
    double stored = 0;  // when the answer was derived from the chain
    double expires = 0;

    bool operator==(const CachedAnswer&) const = default;
};

/// Count record TTLs down by the time elapsed since the answer was derived.
void age_answer(CachedAnswer& a, double now);

/// In-memory LRU tier. Entries live min(ttl, tier ttl) seconds.
class MemoryCache {
public:
    MemoryCache(std::size_t capacity, double ttl, Clock clock);

    std::optional<CachedAnswer> get(const CacheKey& key);
    void put(const CacheKey& key, CachedAnswer answer, double ttl);
    void invalidate_name(std::string_view qname);
    void invalidate_zone(std::string_view zone);
    std::size_t size() const;
    void clear();

    std::size_t capacity() const { return capacity_; }
    double ttl() const { return ttl_; }

private:
    using Order = std::list<std::string>;
    struct Slot {
        CachedAnswer answer;
        Order::iterator pos;
    };
    void erase_if(const std::function<bool(const std::string&, const CachedAnswer&)>& pred);

    std::size_t capacity_;
    double ttl_;
    Clock clock_;
    mutable std::mutex mu_;
    Order order_;  // front = most recently used
    std::unordered_map<std::string, Slot> slots_;
};

/// Persistent tier: one file per key under `dir`. See docs/l2-cache.md.
/// Corrupt files are deleted and counted, never served.
class FileCache {
public:
    FileCache(std::filesystem::path dir, Clock clock);

    std::optional<CachedAnswer> get(const CacheKey& key);
    void put(const CacheKey& key, const CachedAnswer& answer);
    void invalidate_name(std::string_view qname);
    void invalidate_zone(std::string_view zone);
    std::size_t size() const;

    std::uint64_t file_reads() const;
    std::uint64_t corrupt_dropped() const;
    std::filesystem::path path_for(const CacheKey& key) const;

private:
    struct IndexEntry {
        std::string qname;
        std::vector<std::string> zones;
    };
    void drop(const std::string& key_text, const std::filesystem::path& p);

    std::filesystem::path dir_;
    Clock clock_;
    mutable std::mutex mu_;
    std::map<std::string, IndexEntry> index_;
    std::uint64_t reads_ = 0, corrupt_ = 0;
};

/// Ownership binding of a registered domain as seen on chain.
struct DomainBinding {
    std::string asset_name;
    std::optional<std::string> content_id;
    std::string owner;
    std::uint64_t updated_height = 0;
    bool operator==(const DomainBinding&) const = default;
};

/// Domain -> binding tier with a fixed TTL; positive entries only.
class BindingCache {
public:
    BindingCache(double ttl, Clock clock);

    /// `expires`, when given, receives the entry's expiry time.
    std::optional<DomainBinding> get(const std::string& asset_name, double* expires = nullptr);
    void put(const std::string& asset_name, const DomainBinding& b);
    void invalidate(const std::string& asset_name);
    std::size_t size() const;

private:
    double ttl_;
    Clock clock_;
    mutable std::mutex mu_;
    std::map<std::string, std::pair<DomainBinding, double>> entries_;
};

}  // namespace ddns::resolver
