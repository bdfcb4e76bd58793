#include "lcsim/blocktree.hpp"

#include <algorithm>

#include "lcsim/errors.hpp"

namespace lcsim {

Blocktree::Blocktree() {
    // Genesis: honest by convention, node 0, time 0, depth 0.
    blocks_.push_back(Block{0, 0, 0, 0.0, 0});
    children_.emplace_back();
}

BlockId Blocktree::append(BlockId parent, std::int32_t miner, double time,
                          bool allow_tie) {
    if (parent >= blocks_.size())
        throw UnknownParent("append: parent id " + std::to_string(parent) + " out of range");
    if (allow_tie ? time < blocks_.back().mined_at
                  : time <= blocks_.back().mined_at)
        throw NonMonotoneTime("append: time " + std::to_string(time) +
                              " not after last block time " +
                              std::to_string(blocks_.back().mined_at));
    const BlockId id = static_cast<BlockId>(blocks_.size());
    const std::uint32_t depth = blocks_[parent].depth + 1;
    blocks_.push_back(Block{id, parent, miner, time, depth});
    children_.emplace_back();
    children_[parent].push_back(id);
    max_depth_ = std::max(max_depth_, depth);
    return id;
}

const Block& Blocktree::block(BlockId id) const {
    if (id >= blocks_.size())
        throw UnknownBlock("block id " + std::to_string(id) + " out of range");
    return blocks_[id];
}

const std::vector<BlockId>& Blocktree::children(BlockId id) const {
    if (id >= blocks_.size())
        throw UnknownBlock("block id " + std::to_string(id) + " out of range");
    return children_[id];
}

std::vector<BlockId> Blocktree::chain_to_root(BlockId tip) const {
    if (tip >= blocks_.size())
        throw UnknownBlock("chain_to_root: tip " + std::to_string(tip) + " out of range");
    std::vector<BlockId> path;
    path.reserve(blocks_[tip].depth + 1);
    for (BlockId b = tip;; b = blocks_[b].parent) {
        path.push_back(b);
        if (b == kGenesis) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool Blocktree::on_chain(BlockId ancestor, BlockId descendant) const {
    if (ancestor >= blocks_.size() || descendant >= blocks_.size())
        throw UnknownBlock("on_chain: id out of range");
    BlockId b = descendant;
    const std::uint32_t target_depth = blocks_[ancestor].depth;
    while (blocks_[b].depth > target_depth) b = blocks_[b].parent;
    return b == ancestor;
}

}  // namespace lcsim
