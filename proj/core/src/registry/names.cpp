#include "ddns/registry/names.hpp"

#include <algorithm>
#include <cctype>

namespace ddns::registry {

const char* name_error_name(NameError e) {
    switch (e) {
        case NameError::none: return "none";
        case NameError::bad_charset: return "bad-charset";
        case NameError::bad_length: return "bad-length";
        case NameError::bad_structure: return "bad-structure";
    }
    return "unknown";
}

bool is_segment_char(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.'; }

namespace {

NameCheck check_segment(std::string_view seg) {
    if (seg.empty()) return {NameError::bad_structure, "empty segment"};
    for (char c : seg)
        if (!is_segment_char(c)) return {NameError::bad_charset, std::string("character '") + c + "' not allowed"};
    if (seg.size() > kMaxSegmentLength) return {NameError::bad_length, "segment longer than 30 characters"};
    auto edge = [](char c) { return c == '.' || c == '_'; };
    if (edge(seg.front()) || edge(seg.back())) return {NameError::bad_structure, "segment starts or ends with '.' or '_'"};
    if (seg.find("..") != std::string_view::npos) return {NameError::bad_structure, "consecutive dots"};
    return {};
}

}  // namespace

NameCheck validate_asset_name(std::string_view name) {
    auto slash = name.find('/');
    if (slash == std::string_view::npos) {
        // A lone segment may still be rejected for charset/length first.
        if (name.empty()) return {NameError::bad_structure, "empty name"};
        for (char c : name)
            if (!is_segment_char(c)) return {NameError::bad_charset, std::string("character '") + c + "' not allowed"};
        return {NameError::bad_structure, "missing '/' separator"};
    }
    if (name.find('/', slash + 1) != std::string_view::npos) return {NameError::bad_structure, "more than one '/'"};
    auto root = check_segment(name.substr(0, slash));
    if (!root.ok()) return root;
    return check_segment(name.substr(slash + 1));
}

std::optional<std::string> dns_to_asset(std::string_view dns_name) {
    std::string n(dns_name);
    if (!n.empty() && n.back() == '.') n.pop_back();
    auto dot = n.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string root = n.substr(dot + 1);
    std::string rest = n.substr(0, dot);
    auto upper = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        return s;
    };
    std::string asset = upper(root) + "/" + upper(rest);
    if (!validate_asset_name(asset).ok()) return std::nullopt;
    return asset;
}

std::optional<std::string> asset_to_dns(std::string_view asset_name) {
    if (!validate_asset_name(asset_name).ok()) return std::nullopt;
    auto slash = asset_name.find('/');
    std::string out(asset_name.substr(slash + 1));
    out += '.';
    out += asset_name.substr(0, slash);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    // Underscore-only or dot-edge cases are excluded by validation above, but
    // a root containing '.' would not map back.
    if (asset_name.substr(0, slash).find('.') != std::string_view::npos) return std::nullopt;
    return out;
}

std::string asset_root(std::string_view asset_name) {
    auto slash = asset_name.find('/');
    return std::string(asset_name.substr(0, slash));
}

}  // namespace ddns::registry
