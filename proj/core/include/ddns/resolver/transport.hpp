#pragma once

#include "ddns/common/bytes.hpp"

#include <optional>
#include <string>

namespace ddns::resolver {

struct Endpoint {
    std::string host;
    std::uint16_t port = 53;
};

/// "host:port" or "host" (port 53). IPv4 literals only.
std::optional<Endpoint> parse_endpoint(std::string_view text);

/// One UDP request/response exchange. Waits `timeout_ms` per attempt and
/// tries 1 + `retries` times; the reply must carry the query's id.
std::optional<Bytes> udp_exchange(const std::string& endpoint, ByteView query, int timeout_ms, int retries);

}  // namespace ddns::resolver
