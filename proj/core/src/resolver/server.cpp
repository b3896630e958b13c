#include "ddns/resolver/server.hpp"

#include <httplib.h>
#include <openssl/evp.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace ddns::resolver {

std::string base64url_encode(ByteView data) {
    std::string out(4 * ((data.size() + 2) / 3) + 1, '\0');
    auto n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
    while (!out.empty() && out.back() == '=') out.pop_back();
    for (auto& c : out) c = c == '+' ? '-' : c == '/' ? '_' : c;
    return out;
}

std::optional<Bytes> base64url_decode(std::string_view text) {
    std::string s(text);
    for (auto c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return std::nullopt;
    if (s.size() % 4 == 1) return std::nullopt;
    std::replace(s.begin(), s.end(), '-', '+');
    std::replace(s.begin(), s.end(), '_', '/');
    std::size_t pad = (4 - s.size() % 4) % 4;
    s.append(pad, '=');
    Bytes out(s.size() / 4 * 3);
    auto n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(s.data()), static_cast<int>(s.size()));
    if (n < 0) return std::nullopt;
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

UdpServer::UdpServer(Resolver& resolver, std::string bind, std::uint16_t port, unsigned workers)
    : resolver_(resolver), bind_(std::move(bind)), port_(port), workers_(std::max(1u, workers)) {}

UdpServer::~UdpServer() { stop(); }

void UdpServer::start() {
    fd_ = socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0) throw std::runtime_error("udp: socket: " + std::string(std::strerror(errno)));
    sockaddr_in a{};
    a.sin_family = AF_INET;
    a.sin_port = htons(port_);
    if (inet_pton(AF_INET, bind_.c_str(), &a.sin_addr) != 1) {
        close(fd_);
        fd_ = -1;
        throw std::runtime_error("udp: bad bind address " + bind_);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&a), sizeof a) < 0) {
        auto err = std::string(std::strerror(errno));
        close(fd_);
        fd_ = -1;
        throw std::runtime_error("udp: bind " + bind_ + ":" + std::to_string(port_) + ": " + err);
    }
    socklen_t len = sizeof a;
    getsockname(fd_, reinterpret_cast<sockaddr*>(&a), &len);
    port_ = ntohs(a.sin_port);
    running_ = true;
    for (unsigned i = 0; i < workers_; ++i) threads_.emplace_back([this] { loop(); });
}

void UdpServer::loop() {
    Bytes buf(65535);
    while (running_) {
        pollfd p{fd_, POLLIN, 0};
        if (poll(&p, 1, 100) <= 0) continue;
        sockaddr_in from{};
        socklen_t len = sizeof from;
        auto n = recvfrom(fd_, buf.data(), buf.size(), MSG_DONTWAIT, reinterpret_cast<sockaddr*>(&from), &len);
        if (n <= 0) continue;
        auto reply = resolver_.handle(ByteView(buf.data(), static_cast<std::size_t>(n)), dns::kUdpLimit);
        if (!reply.empty())
            sendto(fd_, reply.data(), reply.size(), 0, reinterpret_cast<sockaddr*>(&from), len);
    }
}

void UdpServer::stop() {
    if (!running_.exchange(false) && fd_ < 0) return;
    for (auto& t : threads_) t.join();
    threads_.clear();
    if (fd_ >= 0) close(fd_);
    fd_ = -1;
}

struct DohServer::Impl {
    httplib::Server http;
    std::thread thread;
};

namespace {

void answer(Resolver& resolver, const Bytes& query, httplib::Response& res) {
    auto reply = resolver.handle(query, dns::kMaxMessageSize);
    if (reply.empty()) {
        res.status = 400;
        res.set_content("not a DNS query\n", "text/plain");
        return;
    }
    try {
        auto m = dns::decode_message(reply);
        std::uint32_t ttl = 0;
        bool first = true;
        for (const auto& rr : m.answers) {
            ttl = first ? rr.ttl : std::min(ttl, rr.ttl);
            first = false;
        }
        res.set_header("Cache-Control", "max-age=" + std::to_string(ttl));
    } catch (const dns::WireError&) {
    }
    res.status = 200;
    res.set_content(std::string(reply.begin(), reply.end()), "application/dns-message");
}

}  // namespace

DohServer::DohServer(Resolver& resolver, std::string bind, std::uint16_t port)
    : impl_(std::make_unique<Impl>()), resolver_(resolver), bind_(std::move(bind)), port_(port) {
    impl_->http.Get("/dns-query", [this](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("dns")) {
            res.status = 400;
            res.set_content("missing dns parameter\n", "text/plain");
            return;
        }
        auto q = base64url_decode(req.get_param_value("dns"));
        if (!q) {
            res.status = 400;
            res.set_content("dns parameter is not base64url\n", "text/plain");
            return;
        }
        answer(resolver_, *q, res);
    });
    impl_->http.Post("/dns-query", [this](const httplib::Request& req, httplib::Response& res) {
        auto ct = req.get_header_value("Content-Type");
        if (ct.substr(0, ct.find(';')) != "application/dns-message") {
            res.status = 415;
            res.set_content("expected application/dns-message\n", "text/plain");
            return;
        }
        answer(resolver_, Bytes(req.body.begin(), req.body.end()), res);
    });
}

DohServer::~DohServer() { stop(); }

void DohServer::start() {
    int port = port_ == 0 ? impl_->http.bind_to_any_port(bind_) : (impl_->http.bind_to_port(bind_, port_) ? port_ : -1);
    if (port < 0) throw std::runtime_error("doh: cannot bind " + bind_ + ":" + std::to_string(port_));
    port_ = static_cast<std::uint16_t>(port);
    impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
}

void DohServer::stop() {
    if (!impl_->thread.joinable()) return;
    impl_->http.stop();
    impl_->thread.join();
}

}  // namespace ddns::resolver
