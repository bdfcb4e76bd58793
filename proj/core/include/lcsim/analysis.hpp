#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lcsim/engine.hpp"

namespace lcsim {

// Nondecreasing integer step function, right-continuous, value 0 at time 0.
struct StepFunction {
    std::vector<std::pair<double, int>> jumps;  // (time, new value)

    int at(double t) const;
    void push(double time, int value);  // times nondecreasing, values growing
};

struct AdversaryTree {
    std::size_t honest_index = 0;  // i: tree rooted at the i-th honest block
    BlockId root = kGenesis;
    std::vector<BlockId> members;  // adversary blocks, in mining order
    StepFunction depth;            // D_i(t), relative to the root's depth
};

// One tree per honest block (genesis = index 0); roots plus members
// partition the whole blocktree.
struct AdversaryPartition {
    std::vector<AdversaryTree> trees;
};

AdversaryPartition partition(const Blocktree& tree);

// Level process of the fictitious honest tree: level d opens at the first
// honest arrival more than delta after the level d-1 opener.
struct FictitiousHonestTree {
    std::vector<double> level_open;  // level_open[d-1] = opening time of level d
    double delta = 0.0;

    int depth_at(double t) const;               // D_h(t)
    std::vector<double> inter_times() const;    // X_d, d = 1..levels
};

FictitiousHonestTree fictitious_tree(const std::vector<double>& honest_times,
                                     double delta);

// Honest arrivals in (0, t]; genesis is not an arrival.
int honest_count(const Trace& trace, double t);

// 1-based j; true when no other honest arrival falls in [t_j - delta, t_j + delta].
bool is_loner(const std::vector<double>& honest_times, std::size_t j,
              double delta);

// Honest indices j that are loners and stay ahead of every adversary tree
// rooted before them, evaluated up to the trace horizon.
std::vector<std::size_t> nakamoto_candidates(const Trace& trace, double delta);

// Catch-up pairs (i, k): tree i has reached the fictitious honest chain's
// progress just before honest block k. Pairs with t_k + delta <= horizon.
std::vector<std::pair<std::size_t, std::size_t>> catch_up_events(
    const Trace& trace, double delta);

// Alternative candidate detector driven by catch-up events (plus end-of-
// horizon catch-up states); used to cross-check nakamoto_candidates.
std::vector<std::size_t> nakamoto_candidates_via_catch_up(const Trace& trace,
                                                          double delta);

struct PersistenceViolation {
    BlockId block = 0;
    double time = 0.0;               // when the block left some node's chain
    std::uint32_t depth = 0;         // depth of the block
};

// A violation: a block was k-deep in some honest node's chain and later is
// absent from some honest node's chain. Same-timestamp events are ordered by
// log sequence.
std::vector<PersistenceViolation> check_persistence(const Trace& trace, int k);

struct LivenessViolation {
    double t0 = 0.0;
    double window = 0.0;
};

// A window (t0, t0+u] is violated when no honest block mined inside it is
// stable: present in every node's chain from its first full adoption through
// the horizon. t0 ranges over 0 and the honest mining times.
std::vector<LivenessViolation> check_liveness(const Trace& trace, double u);

// Which honest blocks are stable in the sense above (indexed by honest j).
std::vector<bool> stable_honest_blocks(const Trace& trace);

struct GrowthBoundResult {
    bool ok = true;
    int node = -1;
    double s = 0.0;
    double t = 0.0;
    int lhs = 0;  // D_h(t-delta) - D_h(s+delta)
    int rhs = 0;  // L_p(t) - L_p(s)
};

// Checks D_h(t-delta) - D_h(s+delta) <= L_p(t) - L_p(s) for every node p and
// every s + delta < t - delta; reports the first counterexample.
GrowthBoundResult verify_growth_bound(const Trace& trace);

struct LedgerReport {
    std::vector<std::size_t> nakamoto_candidates;
    std::vector<std::size_t> loners;
    std::vector<std::pair<std::size_t, std::size_t>> catch_ups;
    std::vector<PersistenceViolation> persistence_violations;
    std::vector<LivenessViolation> liveness_violations;
};

LedgerReport analyze(const Trace& trace, int k, double liveness_window = 0.0);

}  // namespace lcsim
