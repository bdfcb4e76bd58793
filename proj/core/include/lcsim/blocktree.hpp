#pragma once

#include <cstdint>
#include <vector>

namespace lcsim {

using BlockId = std::uint32_t;
inline constexpr BlockId kGenesis = 0;

// Node index of the block's miner; kAdversary marks adversary blocks.
inline constexpr std::int32_t kAdversary = -1;

struct Block {
    BlockId id = 0;
    BlockId parent = 0;
    std::int32_t miner = 0;  // honest node index, or kAdversary
    double mined_at = 0.0;
    std::uint32_t depth = 0;

    bool honest() const { return miner >= 0; }
};

// Append-only tree of all mined blocks, honest and adversary, public and
// private. Block ids are dense and equal creation order; genesis is id 0.
class Blocktree {
  public:
    Blocktree();

    // allow_tie permits time equal to the previous block's: used for the
    // proof-of-stake model where one arrival yields copies on several
    // parents, all sharing the arrival time.
    BlockId append(BlockId parent, std::int32_t miner, double time,
                   bool allow_tie = false);

    const Block& block(BlockId id) const;
    const std::vector<BlockId>& children(BlockId id) const;

    std::size_t size() const { return blocks_.size(); }
    std::uint32_t max_depth() const { return max_depth_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    // Path from genesis to tip, inclusive; length = depth(tip) + 1.
    std::vector<BlockId> chain_to_root(BlockId tip) const;

    // True if `ancestor` lies on the path from `descendant` to genesis.
    bool on_chain(BlockId ancestor, BlockId descendant) const;

  private:
    std::vector<Block> blocks_;
    std::vector<std::vector<BlockId>> children_;
    std::uint32_t max_depth_ = 0;
};

}  // namespace lcsim
