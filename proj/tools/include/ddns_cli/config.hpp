#pragma once

#include "ddns/chain/params.hpp"
#include "ddns/resolver/resolver.hpp"

#include <json.hpp>

#include <filesystem>

namespace ddns::cli {

struct GenesisConfig {
    /// "fixed": desk target without retargeting; "desk": desk target with
    /// per-block retargeting; "trivial": every hash wins.
    std::string profile = "fixed";
    std::uint64_t timestamp = 1'700'000'000;
    bool operator==(const GenesisConfig&) const = default;
};

struct NodeConfig {
    std::filesystem::path data_dir = "ddns-data";
    std::filesystem::path store_dir;  // empty: <data_dir>/store
    std::filesystem::path key_file;   // optional default signing key
    GenesisConfig genesis;
    resolver::ResolverConfig resolver;  // empty cache_dir: <data_dir>/cache
};

/// Unknown keys and every invalid value are collected into one
/// CliError{kConfig}. Relative paths are taken against `base`.
NodeConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base);
NodeConfig load_config(const std::filesystem::path& file);
nlohmann::json to_json(const NodeConfig& c);

/// Fills derived paths; call after command-line overrides.
void finalize(NodeConfig& c);

chain::ChainParams chain_params(const GenesisConfig& g);
nlohmann::json to_json(const GenesisConfig& g);

}  // namespace ddns::cli
