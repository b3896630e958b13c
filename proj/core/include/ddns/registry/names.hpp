#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ddns::registry {

enum class NameError { none, bad_charset, bad_length, bad_structure };

const char* name_error_name(NameError e);

struct NameCheck {
    NameError error = NameError::none;
    std::string detail;
    bool ok() const { return error == NameError::none; }
};

inline constexpr std::size_t kMaxSegmentLength = 30;

/// ROOT "/" NAME, each segment 1-30 chars of [A-Z0-9_.], not starting or
/// ending with '.' or '_', no "..".
NameCheck validate_asset_name(std::string_view name);

/// Admissibility of a single character inside a segment.
bool is_segment_char(char c);

/// "example.ddns" -> "DDNS/EXAMPLE"; "a.b.phi" -> "PHI/A.B". The last DNS
/// label becomes the root, the remaining labels keep their order. Input is
/// case-insensitive and may carry a trailing dot. nullopt if the result is
/// not a valid asset name.
std::optional<std::string> dns_to_asset(std::string_view dns_name);
/// Inverse of dns_to_asset on valid names; output is lowercase.
std::optional<std::string> asset_to_dns(std::string_view asset_name);

/// Root segment of a valid asset name ("DDNS" for "DDNS/EXAMPLE").
std::string asset_root(std::string_view asset_name);

inline constexpr std::string_view kSubsidizedRoot = "DDNS";

}  // namespace ddns::registry
