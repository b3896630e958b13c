#pragma once

#include "ddns/zone/records.hpp"

#include <map>
#include <stdexcept>

namespace ddns::zone {

inline constexpr std::size_t kMaxControlFileSize = 64 * 1024;
inline constexpr std::string_view kControlFileVersion = "2.0";

class ControlFileError : public std::runtime_error {
public:
    enum class Kind { syntax, schema, validation };

    ControlFileError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind(kind) {}

    Kind kind;
    std::size_t position = 0;  // syntax: byte offset
    std::string path;          // schema: JSON pointer
    std::string label;         // validation
    std::string type;
    std::string reason;
};

using RecordSets = std::map<RecordType, std::vector<RecordEntry>>;

struct ControlFile {
    std::string version{kControlFileVersion};
    std::string domain;
    /// Owner label ("@", "www", "_dmarc", ...) to record sets.
    std::map<std::string, RecordSets> records;

    bool operator==(const ControlFile&) const = default;
};

ControlFile parse_control_file(std::string_view text);
ControlFile parse_control_file(ByteView bytes);

/// Sorted keys, no whitespace, shortest numbers, TTLs always present.
std::string serialize_canonical(const ControlFile& cf);

/// Re-checks every invariant of an in-memory file (as parse does).
void validate_control_file(const ControlFile& cf);

/// Entries of `type` at `label`; a lone CNAME at the label when it has none.
std::vector<RecordEntry> query_records(const ControlFile& cf, std::string_view label, RecordType type);

/// Owner label of `qname` inside the file's domain ("@" for the apex), or
/// nullopt when the name lies outside it.
std::optional<std::string> label_for(const ControlFile& cf, std::string_view qname);

bool valid_dns_name(std::string_view name);
bool valid_owner_label(std::string_view label);

}  // namespace ddns::zone
