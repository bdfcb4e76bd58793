#include "lcsim/strategies.hpp"

#include <algorithm>

#include "lcsim/errors.hpp"

namespace lcsim {

namespace {

constexpr BlockId kNone = static_cast<BlockId>(-1);

// True once block b has been k-deep in some honest node's adopted chain.
bool block_confirmed(const Engine& e, BlockId b, int k) {
    const auto depth = e.tree().block(b).depth;
    for (int p = 0; p < e.config().n_nodes; ++p) {
        const BlockId tip = e.node_tip(p);
        if (e.node_length(p) + 1 < depth + static_cast<std::uint32_t>(k))
            continue;
        if (e.tree().on_chain(b, tip)) return true;
    }
    return false;
}

class NullStrategy final : public Strategy {
  public:
    std::string name() const override { return "null"; }
};

// Private attack, optionally with the pre-mining phase in front of it.
// Covers PoW and PS with a single private chain, and Chia with a private
// tree whose deepest chain is the attack chain.
class PrivateAttackStrategy : public Strategy {
  public:
    PrivateAttackStrategy(std::size_t target_j, int k, bool require_chia)
        : target_j_(target_j), k_(k), require_chia_(require_chia) {
        if (target_j_ < 1) throw InvalidArgument("target_j must be >= 1");
        if (k_ < 1) throw InvalidArgument("k must be >= 1");
    }

    std::string name() const override {
        return require_chia_ ? "nas" : "private";
    }

    void on_attach(Engine& e) override {
        if (require_chia_ && e.config().model != Model::Chia)
            throw ModelMismatch("nas strategy requires the Chia model");
        base_ = kNone;
        tip_ = kNone;
        active_.clear();
        confirmed_ = false;
        done_ = false;
    }

    std::vector<BlockId> place_adversary(Engine& e) override {
        if (done_ || base_ == kNone) return {};
        (void)e;
        return {tip_ == kNone ? base_ : tip_};
    }

    std::vector<BlockId> chia_active_set(Engine&) override {
        if (done_ || base_ == kNone) return {};
        std::vector<BlockId> active = active_;
        active.push_back(base_);
        return active;
    }

    void on_adversary_block(Engine& e, BlockId b) override {
        active_.push_back(b);
        if (tip_ == kNone || e.tree().block(b).depth > e.tree().block(tip_).depth)
            tip_ = b;
    }

    void after_event(Engine& e) override {
        if (done_) return;
        if (base_ == kNone) {
            if (e.honest_count() < target_j_) return;
            base_ = e.tree().block(e.honest_block(target_j_)).parent;
        }
        const BlockId target = e.honest_block(target_j_);
        if (!confirmed_) confirmed_ = block_confirmed(e, target, k_);
        if (!confirmed_ || tip_ == kNone) return;
        if (e.tree().block(tip_).depth > e.max_public_length()) {
            e.publish(tip_);
            done_ = true;
        }
    }

    void on_finish(Engine& e) override {
        if (e.honest_count() < target_j_)
            throw TargetNeverMined("fewer than target_j honest blocks mined");
    }

  private:
    std::size_t target_j_;
    int k_;
    bool require_chia_;
    BlockId base_ = kNone;
    BlockId tip_ = kNone;
    std::vector<BlockId> active_;
    bool confirmed_ = false;
    bool done_ = false;
};

// Pre-mining followed by the private attack, with the release rule from the
// sample-path dominance argument: release as soon as the attacked block is
// k-deep and the private chain has caught up with the public chain (a tie
// suffices together with an equal-length tie-break).
class SZPremineStrategy final : public Strategy {
  public:
    SZPremineStrategy(std::size_t target_j, int k, bool liveness)
        : target_j_(target_j), k_(k), liveness_(liveness) {
        if (target_j_ < 1) throw InvalidArgument("target_j must be >= 1");
        if (k_ < 1) throw InvalidArgument("k must be >= 1");
    }

    std::string name() const override { return "sz"; }

    void on_attach(Engine& e) override {
        if (e.config().model != Model::PoW)
            throw ModelMismatch("sz strategy requires the PoW model");
        if (e.config().delta != 0.0)
            throw ModelMismatch("sz strategy requires delta = 0");
        base_ = kGenesis;
        tip_ = kNone;
        honest_seen_ = 0;
        done_ = false;
        released_ = false;
    }

    std::vector<BlockId> place_adversary(Engine&) override {
        if (done_) return {};
        return {tip_ == kNone ? base_ : tip_};
    }

    void on_adversary_block(Engine&, BlockId b) override { tip_ = b; }

    void after_event(Engine& e) override {
        if (done_) return;
        while (honest_seen_ < e.honest_count()) {
            ++honest_seen_;
            if (honest_seen_ < target_j_) {
                // Pre-mining: keep the private chain only while it is
                // strictly longer than the public chain; otherwise restart
                // it on the newest honest block.
                const std::uint32_t priv =
                    e.tree().block(tip_ == kNone ? base_ : tip_).depth;
                if (priv <= e.max_public_length()) {
                    base_ = e.honest_block(honest_seen_);
                    tip_ = kNone;
                }
            }
        }
        if (e.honest_count() < target_j_ || tip_ == kNone) return;
        const std::uint32_t priv = e.tree().block(tip_).depth;
        if (priv < e.max_public_length()) return;
        if (liveness_) {
            if (e.honest_count() <
                target_j_ + static_cast<std::size_t>(k_) - 1)
                return;
        } else {
            if (!block_confirmed(e, e.honest_block(target_j_), k_)) return;
        }
        e.publish(tip_);
        released_ = true;
        const std::uint32_t depth = e.tree().block(tip_).depth;
        for (int p = 0; p < e.config().n_nodes; ++p) {
            if (e.node_length(p) == depth && e.node_tip(p) != tip_)
                e.set_tip(p, tip_);
        }
        done_ = true;
    }

    void on_finish(Engine& e) override {
        if (e.honest_count() < target_j_)
            throw TargetNeverMined("fewer than target_j honest blocks mined");
    }

    bool released() const { return released_; }

  private:
    std::size_t target_j_;
    int k_;
    bool liveness_;
    BlockId base_ = kGenesis;
    BlockId tip_ = kNone;
    std::size_t honest_seen_ = 0;
    bool done_ = false;
    bool released_ = false;
};

// Keeps two public chains tied: each arrival yields one copy published on
// the shorter chain's tip and one private copy on the longer chain's tip,
// held in reserve until the shorter chain needs it.
class BalanceStrategy final : public Strategy {
  public:
    std::string name() const override { return "balance"; }

    void on_attach(Engine& e) override {
        if (e.config().model != Model::PS)
            throw ModelMismatch("balance strategy requires the PS model");
        reserve_ = kNone;
        pending_.clear();
        publish_first_ = false;
    }

    void before_event(Engine& e) override { maybe_release_reserve(e); }

    std::vector<BlockId> place_adversary(Engine& e) override {
        pending_.clear();
        const auto [tip1, tip2] = public_tips(e);
        if (tip1 == kGenesis) {
            publish_first_ = false;
            return {kGenesis};
        }
        const auto d1 = e.tree().block(tip1).depth;
        const auto d2 = e.tree().block(tip2).depth;
        if (d1 == d2) {
            // Chains already tied: hold both copies; the one on tip1 is the
            // reserve for whichever chain falls behind next.
            publish_first_ = false;
            return {tip1, tip2};
        }
        publish_first_ = true;
        return {tip2, tip1};  // shorter first: that copy is published
    }

    void on_adversary_block(Engine&, BlockId b) override {
        pending_.push_back(b);
    }

    void after_event(Engine& e) override {
        if (!pending_.empty()) {
            if (publish_first_) {
                e.publish(pending_[0]);
                steer(e, pending_[0]);
                reserve_ = pending_.size() > 1 ? pending_[1] : kNone;
            } else {
                reserve_ = pending_[0];
            }
            pending_.clear();
        }
        maybe_release_reserve(e);
    }

  private:
    // Deepest published block and the deepest published block on the other
    // side of the fork (parent of the tip when there is no fork yet).
    std::pair<BlockId, BlockId> public_tips(const Engine& e) const {
        const auto& tree = e.tree();
        BlockId tip1 = kGenesis;
        std::uint32_t best = 0;
        for (BlockId b = 0; b < tree.size(); ++b) {
            if (!e.is_published(b)) continue;
            if (tree.block(b).depth >= best) {
                best = tree.block(b).depth;
                tip1 = b;
            }
        }
        if (tip1 == kGenesis) return {kGenesis, kGenesis};
        BlockId tip2 = kNone;
        std::uint32_t best2 = 0;
        for (BlockId b = 1; b < tree.size(); ++b) {
            if (!e.is_published(b) || tree.on_chain(b, tip1)) continue;
            if (tree.block(b).depth >= best2) {
                best2 = tree.block(b).depth;
                tip2 = b;
            }
        }
        if (tip2 == kNone) tip2 = tree.block(tip1).parent;
        return {tip1, tip2};
    }

    void maybe_release_reserve(Engine& e) {
        if (reserve_ == kNone) return;
        const auto depth = e.tree().block(reserve_).depth;
        const auto L = e.max_public_length();
        if (depth < L) {
            reserve_ = kNone;  // outpaced; useless for a future tie
            return;
        }
        if (depth == L) {
            e.publish(reserve_);
            steer(e, reserve_);
            reserve_ = kNone;
        }
    }

    // A4: move every node sitting on an equal-length chain onto `tip`.
    void steer(Engine& e, BlockId tip) {
        const auto depth = e.tree().block(tip).depth;
        for (int p = 0; p < e.config().n_nodes; ++p) {
            if (e.node_length(p) == depth && e.node_tip(p) != tip)
                e.set_tip(p, tip);
        }
    }

    BlockId reserve_ = kNone;
    std::vector<BlockId> pending_;
    bool publish_first_ = false;
};

}  // namespace

StrategySpec::Kind strategy_kind_from_name(const std::string& name) {
    if (name == "null") return StrategySpec::Kind::Null;
    if (name == "private") return StrategySpec::Kind::PrivateAttack;
    if (name == "sz") return StrategySpec::Kind::SZPremine;
    if (name == "balance") return StrategySpec::Kind::Balance;
    if (name == "nas") return StrategySpec::Kind::NasChia;
    throw InvalidArgument("unknown strategy: " + name);
}

std::string strategy_name(StrategySpec::Kind kind) {
    switch (kind) {
        case StrategySpec::Kind::Null: return "null";
        case StrategySpec::Kind::PrivateAttack: return "private";
        case StrategySpec::Kind::SZPremine: return "sz";
        case StrategySpec::Kind::Balance: return "balance";
        case StrategySpec::Kind::NasChia: return "nas";
    }
    return "?";
}

std::unique_ptr<Strategy> null_strategy() {
    return std::make_unique<NullStrategy>();
}

std::unique_ptr<Strategy> private_attack(std::size_t target_j, int k) {
    return std::make_unique<PrivateAttackStrategy>(target_j, k, false);
}

std::unique_ptr<Strategy> sz_premine(std::size_t target_j, int k,
                                     bool liveness) {
    return std::make_unique<SZPremineStrategy>(target_j, k, liveness);
}

std::unique_ptr<Strategy> balance_strategy() {
    return std::make_unique<BalanceStrategy>();
}

std::unique_ptr<Strategy> nas_chia_strategy(std::size_t root_j, int k) {
    return std::make_unique<PrivateAttackStrategy>(root_j, k, true);
}

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec) {
    switch (spec.kind) {
        case StrategySpec::Kind::Null: return null_strategy();
        case StrategySpec::Kind::PrivateAttack:
            return private_attack(spec.target_j, spec.k);
        case StrategySpec::Kind::SZPremine:
            return sz_premine(spec.target_j, spec.k, spec.liveness);
        case StrategySpec::Kind::Balance: return balance_strategy();
        case StrategySpec::Kind::NasChia:
            return nas_chia_strategy(spec.target_j, spec.k);
    }
    throw InvalidArgument("unknown strategy kind");
}

}  // namespace lcsim
