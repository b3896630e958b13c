#include "ddns/registry/asset_record.hpp"

#include "ddns/content/content_id.hpp"
#include "ddns/registry/names.hpp"

#include <json.hpp>

#include <set>

namespace ddns::registry {

using nlohmann::json;

AssetRecord AssetRecord::parse(std::string_view text, bool strict) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw AssetRecordError(std::string("syntax: ") + e.what());
    }
    if (!doc.is_object()) throw AssetRecordError("asset record must be an object");
    static const std::set<std::string> known{"asset_name", "quantity", "units", "reissuable",
                                             "has_ipfs", "ipfs_hash", "owner_address"};
    for (const auto& [k, _] : doc.items())
        if (!known.count(k)) throw AssetRecordError("unknown field " + k);
    for (const auto& k : {"asset_name", "quantity", "units", "reissuable", "has_ipfs", "owner_address"})
        if (!doc.contains(k)) throw AssetRecordError(std::string("missing field ") + k);

    AssetRecord r;
    if (!doc["asset_name"].is_string()) throw AssetRecordError("asset_name must be a string");
    r.asset_name = doc["asset_name"].get<std::string>();
    auto check = validate_asset_name(r.asset_name);
    if (!check.ok()) throw AssetRecordError(std::string("asset_name: ") + name_error_name(check.error));

    if (!doc["quantity"].is_number_unsigned() || doc["quantity"].get<std::uint64_t>() != 1)
        throw AssetRecordError("quantity must be 1");
    if (!doc["units"].is_number_unsigned() || doc["units"].get<std::uint64_t>() != 1) throw AssetRecordError("units must be 1");
    if (!doc["reissuable"].is_boolean() || doc["reissuable"].get<bool>()) throw AssetRecordError("reissuable must be false");
    if (!doc["has_ipfs"].is_boolean()) throw AssetRecordError("has_ipfs must be a boolean");
    r.has_ipfs = doc["has_ipfs"].get<bool>();

    if (doc.contains("ipfs_hash") && !doc["ipfs_hash"].is_null()) {
        if (!doc["ipfs_hash"].is_string() || doc["ipfs_hash"].get<std::string>().empty())
            throw AssetRecordError("ipfs_hash must be a non-empty string");
        r.ipfs_hash = doc["ipfs_hash"].get<std::string>();
    }
    if (r.has_ipfs != r.ipfs_hash.has_value()) throw AssetRecordError("has_ipfs must match presence of ipfs_hash");

    if (!doc["owner_address"].is_string() || doc["owner_address"].get<std::string>().empty())
        throw AssetRecordError("owner_address must be a non-empty string");
    r.owner_address = doc["owner_address"].get<std::string>();

    if (strict) {
        if (r.ipfs_hash && !content::ContentId::try_parse(*r.ipfs_hash)) throw AssetRecordError("ipfs_hash is not a content id");
        if (!crypto::Address::decode(r.owner_address)) throw AssetRecordError("owner_address does not decode");
    }
    return r;
}

std::string AssetRecord::canonical_json() const {
    json j;  // nlohmann's default object type keeps keys sorted
    j["asset_name"] = asset_name;
    j["quantity"] = quantity;
    j["units"] = units;
    j["reissuable"] = reissuable;
    j["has_ipfs"] = has_ipfs;
    if (ipfs_hash) j["ipfs_hash"] = *ipfs_hash;
    j["owner_address"] = owner_address;
    return j.dump();
}

AssetRecord AssetRecord::from_asset(const DomainAsset& a) {
    AssetRecord r;
    r.asset_name = a.asset_name;
    r.quantity = a.quantity;
    r.units = a.units;
    r.reissuable = a.reissuable;
    r.has_ipfs = a.has_ipfs;
    r.ipfs_hash = a.ipfs_hash;
    r.owner_address = a.owner_address.encode();
    return r;
}

}  // namespace ddns::registry
