#include "ddns/chain/blockchain.hpp"

#include "ddns/chain/difficulty.hpp"

#include <algorithm>
#include <cstring>
#include <set>

namespace ddns::chain {

namespace {

constexpr std::array<std::uint8_t, 4> kRecordMagic{'D', 'D', 'B', 'K'};
constexpr std::size_t kMaxOrphans = 256;

std::uint32_t load_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void append_block_record(std::ostream& out, const Block& block) {
    auto bytes = block.serialize();
    Writer w;
    w.raw(kRecordMagic);
    w.u32(static_cast<std::uint32_t>(bytes.size()));
    out.write(reinterpret_cast<const char*>(w.data().data()), static_cast<std::streamsize>(w.data().size()));
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
}

std::vector<Block> read_block_file(const std::filesystem::path& path) {
    std::vector<Block> out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos + 8 <= data.size()) {
        if (!std::equal(kRecordMagic.begin(), kRecordMagic.end(), data.begin() + static_cast<std::ptrdiff_t>(pos)))
            throw DecodeError("bad block record magic at offset " + std::to_string(pos));
        auto len = load_le32(data.data() + pos + 4);
        // A torn final record (crash mid-append) is ignored.
        if (pos + 8 + len > data.size()) break;
        out.push_back(Block::deserialize(ByteView(data.data() + pos + 8, len)));
        pos += 8 + len;
    }
    return out;
}

Blockchain::Blockchain(ChainParams params) : params_(std::move(params)), genesis_(make_genesis(params_)) {
    auto h = genesis_.hash();
    index_.emplace(h, Entry{genesis_, {}, 0, seen_counter_++, false});
    active_.push_back(h);
    state_ = genesis_state(genesis_, params_);
}

Blockchain::Blockchain(ChainParams params, const std::filesystem::path& block_file) : Blockchain(std::move(params)) {
    for (const auto& b : read_block_file(block_file)) accept(b, std::nullopt, false);
    file_ = std::make_unique<std::ofstream>(block_file, std::ios::binary | std::ios::app);
    if (!*file_) throw std::runtime_error("cannot open block file " + block_file.string());
}

const Block* Blockchain::find_block(const Hash256& hash) const {
    auto it = index_.find(hash);
    return it == index_.end() ? nullptr : &it->second.block;
}

const Block* Blockchain::block_at_height(std::uint64_t height) const {
    if (height >= active_.size()) return nullptr;
    return find_block(active_[height]);
}

std::size_t Blockchain::orphan_count() const { return orphans_.size(); }

std::vector<BlockHeader> Blockchain::header_window(const Hash256& hash) const {
    std::vector<BlockHeader> out;
    auto it = index_.find(hash);
    while (it != index_.end() && out.size() < params_.difficulty_window) {
        out.push_back(it->second.block.header);
        if (it->second.height == 0) break;
        it = index_.find(it->second.parent);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void Blockchain::append_record(const Block& block) {
    if (file_) append_block_record(*file_, block);
}

SubmitResult Blockchain::submit_block(const Block& block, std::optional<std::uint64_t> now) {
    auto result = accept(block, now, true);
    if (!result.stored) return result;
    // Blocks that were waiting for this one.
    std::vector<Hash256> ready{block.hash()};
    while (!ready.empty()) {
        auto parent = ready.back();
        ready.pop_back();
        auto range = orphans_.equal_range(parent);
        std::vector<Block> children;
        for (auto it = range.first; it != range.second; ++it) children.push_back(it->second);
        orphans_.erase(parent);
        for (const auto& child : children) {
            auto r = accept(child, now, true);
            if (!r.stored) continue;
            ready.push_back(child.hash());
            result.tip_changed |= r.tip_changed;
            result.reorganized |= r.reorganized;
            result.disconnected.insert(result.disconnected.end(), r.disconnected.begin(), r.disconnected.end());
            result.connected.insert(result.connected.end(), r.connected.begin(), r.connected.end());
            result.returned.insert(result.returned.end(), r.returned.begin(), r.returned.end());
        }
    }
    if (result.reorganized) {
        // Anything re-included by later connected blocks is not returned.
        std::set<Hash256> included;
        for (const auto& b : result.connected)
            for (const auto& tx : b.transactions) included.insert(tx.txid());
        std::erase_if(result.returned, [&](const Transaction& tx) { return included.count(tx.txid()) != 0; });
    }
    return result;
}

SubmitResult Blockchain::accept(const Block& block, std::optional<std::uint64_t> now, bool persist) {
    SubmitResult res;
    auto hash = block.hash();
    if (index_.count(hash)) {
        res.report = ValidationReport::fail(ValidationCode::duplicate, "block already known");
        return res;
    }
    auto parent_it = index_.find(block.header.previous_hash);
    if (parent_it == index_.end()) {
        if (orphans_.size() < kMaxOrphans && block.header.meets_target()) orphans_.emplace(block.header.previous_hash, block);
        res.report = ValidationReport::fail(ValidationCode::unknown_parent, "parent not known");
        return res;
    }
    if (parent_it->second.invalid) {
        res.report = ValidationReport::fail(ValidationCode::bad_tx, "parent is invalid");
        return res;
    }
    if (block.header.height != parent_it->second.height + 1) {
        res.report = ValidationReport::fail(ValidationCode::malformed, "height does not follow parent");
        return res;
    }

    // Context-free and header checks before the block is stored anywhere.
    if (!block.header.meets_target()) {
        res.report = ValidationReport::fail(ValidationCode::bad_pow, "header hash above target");
        return res;
    }
    if (block.header.merkle_root != merkle_root(block.transactions)) {
        res.report = ValidationReport::fail(ValidationCode::bad_merkle, "merkle root mismatch");
        return res;
    }
    if (block.weight() > params_.max_block_weight) {
        res.report = ValidationReport::fail(ValidationCode::overweight, "block exceeds weight limit");
        return res;
    }
    auto window = header_window(block.header.previous_hash);
    auto hr = validate_header(block.header, window, params_, now);
    if (!hr.ok()) {
        res.report = hr;
        return res;
    }

    index_.emplace(hash, Entry{block, block.header.previous_hash, block.header.height, seen_counter_++, false});
    if (persist) append_record(block);
    res.stored = true;

    if (block.header.height <= state_.height) return res;  // side branch, first seen wins
    auto act = activate(hash, now);
    act.stored = true;
    return act;
}

void Blockchain::mark_invalid(const Hash256& hash) {
    std::vector<Hash256> stack{hash};
    while (!stack.empty()) {
        auto h = stack.back();
        stack.pop_back();
        auto it = index_.find(h);
        if (it == index_.end() || it->second.invalid) continue;
        it->second.invalid = true;
        for (const auto& [k, e] : index_)
            if (e.parent == h && e.height > 0) stack.push_back(k);
    }
}

SubmitResult Blockchain::activate(const Hash256& new_tip, std::optional<std::uint64_t> now) {
    SubmitResult res;

    // Branch from the fork point up to new_tip.
    std::vector<Hash256> branch;
    auto h = new_tip;
    while (true) {
        const auto& e = index_.at(h);
        if (e.height < active_.size() && active_[e.height] == h) break;
        branch.push_back(h);
        h = e.parent;
    }
    std::reverse(branch.begin(), branch.end());
    auto fork_height = index_.at(h).height;

    // Roll back to the fork point.
    std::vector<Hash256> removed;
    while (active_.size() - 1 > fork_height) {
        auto tip = active_.back();
        const auto& blk = index_.at(tip).block;
        disconnect_block(state_, blk, undo_.at(tip));
        undo_.erase(tip);
        active_.pop_back();
        removed.push_back(tip);
    }

    // Apply the branch; on failure restore the previous chain.
    std::size_t applied = 0;
    ValidationReport failure;
    for (const auto& bh : branch) {
        const auto& blk = index_.at(bh).block;
        ChainState scratch = state_;
        BlockUndo undo;
        auto r = check_and_connect(scratch, blk, params_, now, &undo);
        if (!r.ok()) {
            failure = r;
            mark_invalid(bh);
            break;
        }
        state_ = std::move(scratch);
        undo_[bh] = std::move(undo);
        active_.push_back(bh);
        ++applied;
    }

    if (applied < branch.size() && active_.size() - 1 <= fork_height + removed.size()) {
        // The valid part of the branch is not longer than what we had.
        for (std::size_t i = applied; i-- > 0;) {
            auto bh = active_.back();
            disconnect_block(state_, index_.at(bh).block, undo_.at(bh));
            undo_.erase(bh);
            active_.pop_back();
        }
        for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
            ChainState scratch = state_;
            BlockUndo undo;
            check_and_connect(scratch, index_.at(*it).block, params_, std::nullopt, &undo);
            state_ = std::move(scratch);
            undo_[*it] = std::move(undo);
            active_.push_back(*it);
        }
        res.report = failure;
        return res;
    }

    res.report = failure;  // ok unless a trailing part of the branch failed
    res.tip_changed = applied > 0;
    res.reorganized = !removed.empty() && applied > 0;
    for (auto it = removed.begin(); it != removed.end(); ++it) res.disconnected.push_back(index_.at(*it).block);
    for (std::size_t i = 0; i < applied; ++i) res.connected.push_back(index_.at(branch[i]).block);

    std::set<Hash256> included;
    for (const auto& b : res.connected)
        for (const auto& tx : b.transactions) included.insert(tx.txid());
    // Oldest disconnected block first so dependent transactions re-enter in order.
    for (auto it = res.disconnected.rbegin(); it != res.disconnected.rend(); ++it)
        for (std::size_t i = 1; i < it->transactions.size(); ++i)
            if (!included.count(it->transactions[i].txid())) res.returned.push_back(it->transactions[i]);
    return res;
}

}  // namespace ddns::chain
