#include "ddns_cli/data_dir.hpp"

#include "ddns/registry/names.hpp"
#include "ddns_cli/errors.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace ddns::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kTxMagic[4] = {'D', 'D', 'T', 'X'};

std::vector<chain::Transaction> read_mempool(const fs::path& path) {
    std::vector<chain::Transaction> out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    Bytes all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    // A torn tail (crash mid-write) ends the list; the file is replaced
    // atomically, so this only happens with outside interference.
    while (pos + 8 <= all.size() && std::memcmp(&all[pos], kTxMagic, 4) == 0) {
        std::uint32_t n = all[pos + 4] | all[pos + 5] << 8 | all[pos + 6] << 16 | std::uint32_t(all[pos + 7]) << 24;
        pos += 8;
        if (pos + n > all.size()) break;
        try {
            out.push_back(chain::Transaction::deserialize(ByteView(all).subspan(pos, n)));
        } catch (const std::exception&) {
            break;
        }
        pos += n;
    }
    return out;
}

}  // namespace

DataDir::DataDir(const NodeConfig& config) : config_(config) {
    finalize(config_);
    std::error_code ec;
    fs::create_directories(config_.data_dir, ec);
    if (ec) throw CliError(kConfig, "cannot create data directory " + config_.data_dir.string() + ": " + ec.message());

    auto lock_path = config_.data_dir / "LOCK";
    lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
    if (lock_fd_ < 0) throw CliError(kConfig, "cannot open " + lock_path.string() + ": " + std::strerror(errno));
    if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(lock_fd_);
        lock_fd_ = -1;
        throw CliError(kLocked, "data directory " + config_.data_dir.string() + " is in use by another process");
    }

    auto genesis_path = config_.data_dir / "genesis.json";
    if (fs::exists(genesis_path)) {
        std::ifstream in(genesis_path);
        GenesisConfig recorded;
        try {
            auto j = json::parse(in);
            recorded.profile = j.at("profile").get<std::string>();
            recorded.timestamp = j.at("timestamp").get<std::uint64_t>();
        } catch (const json::exception& e) {
            throw CliError(kIntegrity, genesis_path.string() + ": " + e.what());
        }
        if (!(recorded == config_.genesis))
            throw CliError(kConfig, "genesis settings differ from those recorded in " + genesis_path.string() + " " +
                                        to_json(recorded).dump());
    } else {
        std::ofstream(genesis_path) << to_json(config_.genesis).dump(2) << "\n";
    }

    try {
        node_ = std::make_unique<chain::Node>(chain_params(config_.genesis), config_.data_dir / "blocks.dat");
    } catch (const std::exception& e) {
        throw CliError(kIntegrity, "cannot replay block file: " + std::string(e.what()));
    }
    store_ = std::make_shared<content::ContentStore>(config_.store_dir);

    for (const auto& tx : read_mempool(config_.data_dir / "mempool.dat"))
        if (node_->submit_transaction(tx).ok()) ++restored_;
}

DataDir::~DataDir() {
    if (lock_fd_ >= 0) ::close(lock_fd_);  // releases the flock
}

void DataDir::save_mempool() {
    auto entries = node_->mempool().ordered();
    std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->arrival < b->arrival; });
    auto path = config_.data_dir / "mempool.dat";
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        for (const auto* e : entries) {
            auto bytes = e->tx.serialize();
            std::uint32_t n = static_cast<std::uint32_t>(bytes.size());
            char len[4] = {char(n), char(n >> 8), char(n >> 16), char(n >> 24)};
            out.write(kTxMagic, 4).write(len, 4).write(reinterpret_cast<const char*>(bytes.data()), n);
        }
        if (!out.flush()) throw CliError(kInternal, "cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::shared_ptr<const resolver::DomainDirectory> DataDir::directory() const {
    return std::make_shared<resolver::StateDirectory>(std::make_shared<const chain::ChainState>(node_->state()));
}

void DataDir::record_cache_view(const resolver::ResolverConfig& rc) const {
    auto dir = rc.cache_dir.empty() ? config_.resolver.cache_dir : rc.cache_dir;
    fs::create_directories(dir);
    auto tmp = dir / "VIEW.tmp";
    std::ofstream(tmp, std::ios::trunc) << node_->chain().tip().hex() << "\n";
    fs::rename(tmp, dir / "VIEW");
}

std::shared_ptr<resolver::Resolver> DataDir::make_resolver(resolver::ResolverConfig rc) const {
    if (rc.cache_dir.empty()) rc.cache_dir = config_.resolver.cache_dir;
    const auto& chain = node_->chain();

    std::optional<Hash256> view;
    if (std::ifstream in(rc.cache_dir / "VIEW"); in) {
        std::string hex;
        in >> hex;
        try {
            view = Hash256::from_hex(hex);
        } catch (const std::exception&) {
        }
    }
    const chain::Block* at = view ? chain.find_block(*view) : nullptr;
    bool on_active = at && chain.block_at_height(at->header.height) == at;
    if (fs::exists(rc.cache_dir) && !on_active) {
        // Unknown or reorganized view: nothing in the cache can be trusted.
        for (const auto& e : fs::directory_iterator(rc.cache_dir)) fs::remove_all(e.path());
    }

    auto res = std::make_shared<resolver::Resolver>(rc, directory(), std::make_shared<resolver::StoreSource>(store_));
    if (on_active) {
        for (auto h = at->header.height + 1; h <= chain.height(); ++h)
            for (const auto& tx : chain.block_at_height(h)->transactions)
                if (tx.asset_op)
                    if (auto name = registry::asset_to_dns(tx.asset_op->asset_name)) res->invalidate(*name);
    }
    record_cache_view(rc);
    return res;
}

}  // namespace ddns::cli
