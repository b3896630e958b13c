#pragma once

#include "ddns/chain/node.hpp"
#include "ddns/content/store.hpp"
#include "ddns/resolver/resolver.hpp"
#include "ddns_cli/config.hpp"

#include <memory>

namespace ddns::cli {

/// An opened node data directory:
///   LOCK          flock(2) target, held while open
///   genesis.json  chain parameters fixed at creation
///   blocks.dat    block records, replayed on open
///   mempool.dat   pending transactions ("DDTX", u32 length, bytes)
///   store/        content store
///   cache/        resolver file cache
///   cache/VIEW    tip hash the file cache was last made coherent with
class DataDir {
public:
    /// Throws CliError{kLocked} when another process holds the directory
    /// and CliError{kConfig} when genesis.json disagrees with the config.
    explicit DataDir(const NodeConfig& config);
    ~DataDir();
    DataDir(const DataDir&) = delete;
    DataDir& operator=(const DataDir&) = delete;

    chain::Node& node() { return *node_; }
    std::shared_ptr<content::ContentStore> store() { return store_; }
    const NodeConfig& config() const { return config_; }

    /// Rewrites mempool.dat atomically, in arrival order.
    void save_mempool();
    std::size_t restored_transactions() const { return restored_; }

    /// Brings the file cache up to the current tip first: names touched by
    /// asset operations since the recorded view are invalidated, and a view
    /// no longer on the active chain clears the cache.
    std::shared_ptr<resolver::Resolver> make_resolver(resolver::ResolverConfig rc) const;
    /// Records the current tip as the file cache's view.
    void record_cache_view(const resolver::ResolverConfig& rc) const;
    std::shared_ptr<const resolver::DomainDirectory> directory() const;

private:
    NodeConfig config_;
    int lock_fd_ = -1;
    std::unique_ptr<chain::Node> node_;
    std::shared_ptr<content::ContentStore> store_;
    std::size_t restored_ = 0;
};

}  // namespace ddns::cli
