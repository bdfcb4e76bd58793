#include "lcsim/engine.hpp"

#include <algorithm>
#include <cmath>

#include "lcsim/errors.hpp"

namespace lcsim {

std::string model_name(Model m) {
    switch (m) {
        case Model::PoW: return "pow";
        case Model::PS: return "ps";
        case Model::Chia: return "chia";
    }
    return "?";
}

Model model_from_name(const std::string& name) {
    if (name == "pow") return Model::PoW;
    if (name == "ps") return Model::PS;
    if (name == "chia") return Model::Chia;
    throw InvalidArgument("unknown model: " + name);
}

double Trace::honest_time(std::size_t j) const {
    if (j == 0 || j >= honest_index.size())
        throw IndexOutOfRange("honest_time: index " + std::to_string(j));
    return tree.block(honest_index[j]).mined_at;
}

std::vector<double> Trace::honest_times() const {
    std::vector<double> t;
    t.reserve(honest_index.size() - 1);
    for (std::size_t j = 1; j < honest_index.size(); ++j)
        t.push_back(tree.block(honest_index[j]).mined_at);
    return t;
}

Engine::Engine(const SimulationConfig& config, Strategy& strategy)
    : config_(config), strategy_(&strategy), rng_(config.seed) {
    if (config_.n_nodes < 1) throw InvalidArgument("n_nodes must be >= 1");
    if (config_.delta < 0.0) throw InvalidArgument("delta must be >= 0");
    if (config_.horizon <= 0.0) throw InvalidArgument("horizon must be > 0");
    if (config_.lambda_h < 0.0 || config_.lambda_a < 0.0)
        throw InvalidRate("negative mining rate");
}

bool Engine::is_published(BlockId b) const {
    return published_at_.at(b) != Trace::kNever;
}

BlockId Engine::node_tip(int node) const { return views_.at(node).tip; }

std::uint32_t Engine::node_length(int node) const {
    return views_.at(node).length;
}

std::uint32_t Engine::max_public_length() const {
    std::uint32_t best = 0;
    for (const auto& v : views_) best = std::max(best, v.length);
    return best;
}

BlockId Engine::honest_block(std::size_t j) const {
    if (j >= honest_index_.size())
        throw IndexOutOfRange("honest_block: index " + std::to_string(j));
    return honest_index_[j];
}

void Engine::log_view(int node) {
    view_log_.push_back(
        {now_, node, views_[node].tip, views_[node].length});
}

void Engine::learn(int node, BlockId block) {
    View& v = views_[node];
    if (block < v.known.size() && v.known[block]) return;
    // Insert the whole unknown ancestor path, root-first, so views stay
    // ancestor-closed.
    std::vector<BlockId> path;
    for (BlockId b = block;; b = tree_.block(b).parent) {
        if (b < v.known.size() && v.known[b]) break;
        path.push_back(b);
        if (b == kGenesis) break;
    }
    if (v.known.size() < tree_.size()) v.known.resize(tree_.size(), 0);
    bool changed = false;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        v.known[*it] = 1;
        const auto depth = tree_.block(*it).depth;
        if (depth > v.length) {  // longer chain wins; ties keep current tip
            v.tip = *it;
            v.length = depth;
            changed = true;
        }
    }
    if (changed) log_view(node);
}

void Engine::publish(BlockId block) {
    if (block >= tree_.size()) throw UnknownBlock("publish: id out of range");
    std::vector<BlockId> path;
    for (BlockId b = block; published_at_[b] == Trace::kNever;
         b = tree_.block(b).parent) {
        path.push_back(b);
        if (b == kGenesis) break;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        published_at_[*it] = now_;
    for (int p = 0; p < config_.n_nodes; ++p) learn(p, block);
}

void Engine::set_tip(int node, BlockId tip) {
    if (node < 0 || node >= config_.n_nodes)
        throw InvalidArgument("set_tip: bad node index");
    View& v = views_[node];
    if (tip >= v.known.size() || !v.known[tip])
        throw StrategyViolation("set_tip: block not in node view");
    if (tree_.block(tip).depth != v.length)
        throw StrategyViolation("set_tip: tie-break to a non-equal-length chain");
    if (v.tip == tip) return;
    v.tip = tip;
    log_view(node);
}

BlockId Engine::append_adversary(BlockId parent, double t, bool allow_tie) {
    BlockId id = tree_.append(parent, kAdversary, t, allow_tie);
    published_at_.push_back(Trace::kNever);
    return id;
}

void Engine::process_honest_arrival(double t, int node) {
    BlockId parent = views_[node].tip;
    BlockId id = tree_.append(parent, node, t);
    published_at_.push_back(t);
    honest_index_.push_back(id);
    learn(node, id);
    for (int p = 0; p < config_.n_nodes; ++p) {
        if (p == node) continue;
        if (config_.delta == 0.0) {
            learn(p, id);
        } else {
            pending_.push({t + config_.delta, delivery_seq_++, id, p});
        }
    }
}

void Engine::process_adversary_arrival_pow_ps(double t) {
    std::vector<BlockId> parents = strategy_->place_adversary(*this);
    if (parents.empty()) {
        // Arrival discarded: the adversary may always waste its power.
        return;
    }
    if (config_.model == Model::PoW && parents.size() != 1)
        throw StrategyViolation("PoW placement must name exactly one parent");
    for (std::size_t i = 0; i < parents.size(); ++i)
        for (std::size_t j = i + 1; j < parents.size(); ++j)
            if (parents[i] == parents[j])
                throw StrategyViolation("PS placement parents must be distinct");
    bool first = true;
    for (BlockId parent : parents) {
        BlockId id = append_adversary(parent, t, !first);
        first = false;
        strategy_->on_adversary_block(*this, id);
    }
}

double Engine::next_chia_arrival(double t) {
    auto active = strategy_->chia_active_set(*this);
    if (active.empty() || config_.lambda_a <= 0.0)
        return Trace::kNever;
    return t + rng_.exponential(config_.lambda_a *
                                static_cast<double>(active.size()));
}

Trace Engine::run() {
    // Chia adversary arrivals depend on the evolving tree, so only honest
    // arrivals are pre-sampled for that model.
    const double la = config_.model == Model::Chia ? 0.0 : config_.lambda_a;
    MiningSchedule schedule = sample_poisson_schedule(
        config_.lambda_h, la, config_.horizon, derive_seed(config_.seed, 1));
    return run_events(schedule, /*sampled=*/true, {});
}

Trace Engine::replay(const MiningSchedule& schedule,
                     const std::vector<int>& honest_nodes) {
    double last = 0.0;
    for (const auto& e : schedule.events) {
        if (e.time <= last)
            throw MalformedSchedule("replay times must be strictly increasing");
        last = e.time;
    }
    return run_events(schedule, /*sampled=*/false, honest_nodes);
}

Trace Engine::run_events(const MiningSchedule& schedule, bool sampled,
                         const std::vector<int>& honest_nodes) {
    now_ = 0.0;
    tree_ = Blocktree();
    published_at_.assign(1, 0.0);
    honest_index_.assign(1, kGenesis);
    view_log_.clear();
    realized_events_.clear();
    pending_ = {};
    delivery_seq_ = 0;
    views_.assign(config_.n_nodes, View{});
    for (auto& v : views_) v.known.assign(1, 1);
    for (int p = 0; p < config_.n_nodes; ++p) log_view(p);

    strategy_->on_attach(*this);

    std::size_t idx = 0;
    std::size_t honest_seen = 0;
    const double inf = Trace::kNever;
    double t_chia = config_.model == Model::Chia ? next_chia_arrival(0.0) : inf;

    for (;;) {
        double t_sched = idx < schedule.events.size()
                             ? schedule.events[idx].time
                             : inf;
        double t_deliv = pending_.empty() ? inf : pending_.top().deadline;
        double t = std::min({t_sched, t_deliv, t_chia});
        if (t == inf || t > config_.horizon) break;
        now_ = t;
        if (t_deliv <= t_sched && t_deliv <= t_chia) {
            Delivery d = pending_.top();
            pending_.pop();
            strategy_->before_event(*this);
            learn(d.node, d.block);
            strategy_->after_event(*this);
        } else if (t_chia < t_sched) {
            strategy_->before_event(*this);
            auto active = strategy_->chia_active_set(*this);
            if (!active.empty()) {
                BlockId parent = active[rng_.below(active.size())];
                BlockId id = append_adversary(parent, t, false);
                realized_events_.push_back({t, true});
                strategy_->on_adversary_block(*this, id);
            }
            strategy_->after_event(*this);
        } else {
            const MiningEvent ev = schedule.events[idx++];
            realized_events_.push_back(ev);
            strategy_->before_event(*this);
            if (!ev.adversary) {
                int node;
                if (sampled) {
                    node = static_cast<int>(rng_.below(config_.n_nodes));
                } else if (!honest_nodes.empty()) {
                    node = honest_nodes[honest_seen % honest_nodes.size()];
                    if (node < 0 || node >= config_.n_nodes)
                        throw MalformedSchedule("replay node index out of range");
                } else {
                    node = static_cast<int>(honest_seen %
                                            static_cast<std::size_t>(config_.n_nodes));
                }
                ++honest_seen;
                process_honest_arrival(t, node);
            } else if (config_.model == Model::Chia) {
                // Replayed adversary arrival under Chia: fire it on the
                // strategy's active set, as dynamic arrivals would.
                auto active = strategy_->chia_active_set(*this);
                if (!active.empty()) {
                    BlockId parent = active[rng_.below(active.size())];
                    BlockId id = append_adversary(parent, t, false);
                    strategy_->on_adversary_block(*this, id);
                }
            } else {
                process_adversary_arrival_pow_ps(t);
            }
            strategy_->after_event(*this);
        }
        if (config_.model == Model::Chia) t_chia = next_chia_arrival(now_);
    }

    strategy_->on_finish(*this);

    Trace trace;
    trace.config = config_;
    trace.tree = std::move(tree_);
    trace.schedule.events = std::move(realized_events_);
    trace.schedule.horizon = config_.horizon;
    trace.schedule.lambda_h = config_.lambda_h;
    trace.schedule.lambda_a = config_.lambda_a;
    trace.honest_index = std::move(honest_index_);
    trace.published_at = std::move(published_at_);
    trace.view_log = std::move(view_log_);
    trace.final_tips.reserve(views_.size());
    for (const auto& v : views_) trace.final_tips.push_back(v.tip);
    trace.horizon = config_.horizon;
    return trace;
}

Trace run_simulation(const SimulationConfig& config, Strategy& strategy) {
    Engine engine(config, strategy);
    return engine.run();
}

Trace replay_simulation(const MiningSchedule& schedule,
                        const SimulationConfig& config, Strategy& strategy,
                        const std::vector<int>& honest_nodes) {
    Engine engine(config, strategy);
    return engine.replay(schedule, honest_nodes);
}

}  // namespace lcsim
