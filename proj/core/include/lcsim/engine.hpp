#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "lcsim/blocktree.hpp"
#include "lcsim/mining.hpp"
#include "lcsim/rng.hpp"

namespace lcsim {

enum class Model { PoW, PS, Chia };

std::string model_name(Model m);
Model model_from_name(const std::string& name);

struct SimulationConfig {
    double lambda_h = 1.0;
    double lambda_a = 0.0;
    double delta = 0.0;
    Model model = Model::PoW;
    int n_nodes = 1;
    double horizon = 100.0;
    std::uint64_t seed = 0;
    int confirm_depth = 6;
};

// One row of the per-node tip history; appended whenever a node's adopted
// chain changes (including equal-length switches).
struct ViewEvent {
    double time = 0.0;
    int node = 0;
    BlockId tip = kGenesis;
    std::uint32_t length = 0;
};

struct Trace {
    SimulationConfig config;
    Blocktree tree;
    MiningSchedule schedule;  // arrivals as realized (Chia arrivals included)
    std::vector<BlockId> honest_index;  // [0] = genesis, [j] = j-th honest block
    std::vector<double> published_at;   // per block id; +inf while private
    std::vector<ViewEvent> view_log;
    std::vector<BlockId> final_tips;    // per node
    double horizon = 0.0;

    static constexpr double kNever = std::numeric_limits<double>::infinity();

    std::size_t honest_blocks() const { return honest_index.size() - 1; }
    double honest_time(std::size_t j) const;    // j >= 1
    std::vector<double> honest_times() const;   // times of blocks 1..m
    bool published(BlockId b) const { return published_at[b] != kNever; }
};

class Engine;

// Adversary decision hooks (capabilities A1-A4). One instance drives one run.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;

    virtual void on_attach(Engine&) {}
    // Called immediately before / after each processed event (arrival or
    // delivery); publication and tie-break directives go through the Engine.
    virtual void before_event(Engine&) {}
    virtual void after_event(Engine&) {}

    // PoW: exactly one parent; PS: a set of distinct parents, one copy each;
    // empty vector discards the arrival. Not used for Chia.
    virtual std::vector<BlockId> place_adversary(Engine&) { return {}; }

    // Chia: the blocks currently carrying independent arrival processes.
    virtual std::vector<BlockId> chia_active_set(Engine&) { return {}; }

    virtual void on_adversary_block(Engine&, BlockId) {}

    // Called once after the last event, before the trace is assembled.
    virtual void on_finish(Engine&) {}
};

class Engine {
  public:
    Engine(const SimulationConfig& config, Strategy& strategy);

    Trace run();
    // Same semantics on a supplied arrival sequence. honest_nodes, when
    // non-empty, assigns the j-th honest arrival to honest_nodes[(j-1) %
    // size]; default is round-robin over n_nodes.
    Trace replay(const MiningSchedule& schedule,
                 const std::vector<int>& honest_nodes = {});

    // --- observable state (read-only for strategies) ---
    double now() const { return now_; }
    const SimulationConfig& config() const { return config_; }
    const Blocktree& tree() const { return tree_; }
    bool is_published(BlockId b) const;
    BlockId node_tip(int node) const;
    std::uint32_t node_length(int node) const;
    std::uint32_t max_public_length() const;  // max L over honest nodes
    std::size_t honest_count() const { return honest_index_.size() - 1; }
    BlockId honest_block(std::size_t j) const;  // j in [0, honest_count()]

    // --- adversary directives ---
    // A3: make a private block and its private ancestors visible to every
    // honest node immediately (zero chosen delay).
    void publish(BlockId block);
    // A4: switch a node's tip to an equal-length known chain.
    void set_tip(int node, BlockId tip);

  private:
    struct Delivery {
        double deadline;
        std::uint64_t seq;
        BlockId block;
        int node;
        bool operator>(const Delivery& o) const {
            return std::tie(deadline, seq) > std::tie(o.deadline, o.seq);
        }
    };
    struct View {
        std::vector<std::uint8_t> known;
        BlockId tip = kGenesis;
        std::uint32_t length = 0;
    };

    Trace run_events(const MiningSchedule& schedule, bool sampled,
                     const std::vector<int>& honest_nodes);
    void learn(int node, BlockId block);
    void process_honest_arrival(double t, int node);
    void process_adversary_arrival_pow_ps(double t);
    BlockId append_adversary(BlockId parent, double t, bool allow_tie);
    void log_view(int node);
    double next_chia_arrival(double t);

    SimulationConfig config_;
    Strategy* strategy_;
    Rng rng_;

    double now_ = 0.0;
    Blocktree tree_;
    std::vector<View> views_;
    std::vector<double> published_at_;
    std::vector<BlockId> honest_index_;
    std::vector<ViewEvent> view_log_;
    std::priority_queue<Delivery, std::vector<Delivery>, std::greater<Delivery>>
        pending_;
    std::uint64_t delivery_seq_ = 0;
    std::vector<MiningEvent> realized_events_;
};

Trace run_simulation(const SimulationConfig& config, Strategy& strategy);
Trace replay_simulation(const MiningSchedule& schedule,
                        const SimulationConfig& config, Strategy& strategy,
                        const std::vector<int>& honest_nodes = {});

}  // namespace lcsim
