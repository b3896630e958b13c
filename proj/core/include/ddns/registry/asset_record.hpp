#pragma once

#include "ddns/registry/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace ddns::registry {

class AssetRecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON view of a domain asset:
///   {"asset_name", "quantity", "units", "reissuable", "has_ipfs",
///    "ipfs_hash", "owner_address"}
struct AssetRecord {
    std::string asset_name;
    std::uint64_t quantity = 1;
    std::uint32_t units = 1;
    bool reissuable = false;
    bool has_ipfs = false;
    std::optional<std::string> ipfs_hash;
    std::string owner_address;

    bool operator==(const AssetRecord&) const = default;

    /// Structural parse: exact key set, JSON types, a valid asset name,
    /// quantity = units = 1, reissuable = false, has_ipfs matching the
    /// presence of ipfs_hash. With `strict`, ipfs_hash must be a content id
    /// and owner_address a decodable address; without it, those two fields
    /// are only required to be non-empty strings (documentation examples
    /// elide them).
    static AssetRecord parse(std::string_view json, bool strict = true);
    /// Sorted keys, no whitespace.
    std::string canonical_json() const;

    static AssetRecord from_asset(const DomainAsset& a);
};

}  // namespace ddns::registry
