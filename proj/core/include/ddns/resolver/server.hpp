#pragma once

#include "ddns/resolver/resolver.hpp"

#include <thread>

namespace ddns::resolver {

/// Plain DNS over UDP. Replies are truncated to 512 bytes.
class UdpServer {
public:
    UdpServer(Resolver& resolver, std::string bind, std::uint16_t port, unsigned workers = 4);
    ~UdpServer();
    UdpServer(const UdpServer&) = delete;
    UdpServer& operator=(const UdpServer&) = delete;

    /// Throws std::runtime_error when the socket cannot be bound.
    void start();
    void stop();
    /// Actual port, useful when constructed with port 0.
    std::uint16_t port() const { return port_; }

private:
    void loop();

    Resolver& resolver_;
    std::string bind_;
    std::uint16_t port_;
    unsigned workers_;
    int fd_ = -1;
    std::atomic<bool> running_{false};
    std::vector<std::thread> threads_;
};

/// DNS over HTTPS wire format (GET ?dns=<base64url>, POST
/// application/dns-message) on plain HTTP at /dns-query.
class DohServer {
public:
    DohServer(Resolver& resolver, std::string bind, std::uint16_t port);
    ~DohServer();
    DohServer(const DohServer&) = delete;
    DohServer& operator=(const DohServer&) = delete;

    void start();
    void stop();
    std::uint16_t port() const { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Resolver& resolver_;
    std::string bind_;
    std::uint16_t port_;
};

std::string base64url_encode(ByteView data);
std::optional<Bytes> base64url_decode(std::string_view text);

}  // namespace ddns::resolver
