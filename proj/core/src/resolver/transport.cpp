#include "ddns/resolver/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <charconv>
#include <chrono>

namespace ddns::resolver {

std::optional<Endpoint> parse_endpoint(std::string_view text) {
    Endpoint e;
    auto colon = text.rfind(':');
    e.host = std::string(text.substr(0, colon));
    if (colon != std::string_view::npos) {
        auto p = text.substr(colon + 1);
        unsigned v = 0;
        auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
        if (ec != std::errc() || end != p.data() + p.size() || v == 0 || v > 65535) return std::nullopt;
        e.port = static_cast<std::uint16_t>(v);
    }
    in_addr a{};
    if (inet_pton(AF_INET, e.host.c_str(), &a) != 1) return std::nullopt;
    return e;
}

std::optional<Bytes> udp_exchange(const std::string& endpoint, ByteView query, int timeout_ms, int retries) {
    auto ep = parse_endpoint(endpoint);
    if (!ep || query.size() < 2) return std::nullopt;
    int fd = socket(AF_INET, SOCK_DGRAM, 0);
    if (fd < 0) return std::nullopt;
    sockaddr_in to{};
    to.sin_family = AF_INET;
    to.sin_port = htons(ep->port);
    inet_pton(AF_INET, ep->host.c_str(), &to.sin_addr);
    std::optional<Bytes> out;
    Bytes buf(65535);
    for (int attempt = 0; attempt <= retries && !out; ++attempt) {
        if (sendto(fd, query.data(), query.size(), 0, reinterpret_cast<sockaddr*>(&to), sizeof to) < 0) break;
        auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
        for (;;) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
            if (left <= 0) break;
            pollfd p{fd, POLLIN, 0};
            if (poll(&p, 1, static_cast<int>(left)) <= 0) break;
            auto n = recv(fd, buf.data(), buf.size(), 0);
            if (n < 2) continue;
            if (buf[0] != query[0] || buf[1] != query[1]) continue;  // stale or spoofed
            out = Bytes(buf.begin(), buf.begin() + n);
            break;
        }
    }
    close(fd);
    return out;
}

}  // namespace ddns::resolver
