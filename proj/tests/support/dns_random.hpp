#pragma once

#include "ddns/dns/message.hpp"

#include <random>

namespace ddns::fixture {

// Random well-formed messages. Names come from a small pool with shared
// suffixes so compression is exercised; labels may hold any byte.
class RandomMessages {
public:
    explicit RandomMessages(std::uint64_t seed) : rng_(seed) {
        for (int i = 0; i < 12; ++i) pool_.push_back(random_name());
    }

    dns::Message next() {
        dns::Message m;
        m.header = dns::Header::from_flags(static_cast<std::uint16_t>(rng_()), static_cast<std::uint16_t>(rng_()));
        auto qn = pick(3);
        for (std::size_t i = 0; i < qn; ++i)
            m.questions.push_back({name(), static_cast<std::uint16_t>(rng_()), static_cast<std::uint16_t>(rng_())});
        for (auto* sec : {&m.answers, &m.authority, &m.additional}) {
            auto n = pick(6);
            for (std::size_t i = 0; i < n; ++i) sec->push_back(record());
        }
        return m;
    }

private:
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % (n + 1)); }

    std::vector<std::string> random_labels() {
        std::vector<std::string> labels;
        auto count = 1 + pick(4);
        for (std::size_t i = 0; i < count; ++i) {
            std::string l;
            auto len = 1 + pick(rng_() % 8 == 0 ? 62 : 9);
            bool binary = rng_() % 10 == 0;
            for (std::size_t k = 0; k < len; ++k)
                l.push_back(binary ? static_cast<char>(rng_()) : "abcdefghijklmnopqrstuvwxyz0123456789-_"[rng_() % 38]);
            labels.push_back(l);
        }
        return labels;
    }

    std::string random_name() {
        auto base = rng_() % 3 == 0 || pool_.empty() ? dns::split_name("example.ddns")
                                                     : dns::split_name(pool_[rng_() % pool_.size()]);
        auto extra = random_labels();
        extra.insert(extra.end(), base.begin(), base.end());
        while (true) {
            std::size_t len = 1;
            for (const auto& l : extra) len += 1 + l.size();
            if (len <= 255) break;
            extra.erase(extra.begin());
        }
        return dns::join_labels(extra);
    }

    std::string name() {
        auto r = rng_() % 10;
        if (r == 0) return "";
        if (r < 6) return pool_[rng_() % pool_.size()];
        return random_name();
    }

    dns::ResourceRecord record() {
        static const std::uint16_t types[] = {dns::type::A,   dns::type::NS,  dns::type::CNAME, dns::type::SOA,
                                              dns::type::PTR, dns::type::MX,  dns::type::TXT,   dns::type::AAAA,
                                              dns::type::SRV, dns::type::CAA, 0xFF00};
        dns::ResourceRecord rr;
        rr.name = name();
        rr.rtype = types[rng_() % std::size(types)];
        rr.rclass = static_cast<std::uint16_t>(rng_());
        rr.ttl = static_cast<std::uint32_t>(rng_());
        auto put_name = [&] {
            auto b = dns::encode_name(name());
            rr.rdata.insert(rr.rdata.end(), b.begin(), b.end());
        };
        switch (rr.rtype) {
            case dns::type::NS:
            case dns::type::CNAME:
            case dns::type::PTR:
                put_name();
                break;
            case dns::type::MX:
                rr.rdata = {static_cast<std::uint8_t>(rng_()), static_cast<std::uint8_t>(rng_())};
                put_name();
                break;
            case dns::type::SOA:
                put_name();
                put_name();
                for (int i = 0; i < 20; ++i) rr.rdata.push_back(static_cast<std::uint8_t>(rng_()));
                break;
            default: {
                auto n = pick(rng_() % 16 == 0 ? 300 : 40);
                for (std::size_t i = 0; i < n; ++i) rr.rdata.push_back(static_cast<std::uint8_t>(rng_()));
            }
        }
        return rr;
    }

    std::mt19937_64 rng_;
    std::vector<std::string> pool_;
};

}  // namespace ddns::fixture
