#pragma once

#include <cstdint>
#include <vector>

#include "lcsim/engine.hpp"
#include "lcsim/strategies.hpp"

namespace lcsim {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    long failed_trials = 0;  // trials that raised an engine error
};

Estimate make_estimate(double mean, double std_error, long trials);
Estimate binomial_estimate(long successes, long trials);

// Fraction of trials in which the strategy's target block (any block, for
// targetless strategies) suffers a persistence violation at depth spec.k.
Estimate estimate_attack_success(const SimulationConfig& config,
                                 const StrategySpec& spec, long trials,
                                 std::uint64_t master_seed);

// Mean fraction of honest blocks mined in the first 80% of the horizon that
// end as Nakamoto candidates.
Estimate estimate_nakamoto_frequency(const SimulationConfig& config,
                                     const StrategySpec& spec, long trials,
                                     std::uint64_t master_seed);

// Probability that a window of the given length, started at a uniformly
// sampled point away from the horizon edges, contains no Nakamoto candidate.
// Windows are nested across lengths at a fixed seed.
Estimate estimate_window_gap(const SimulationConfig& config,
                             const StrategySpec& spec, double window_t,
                             long trials, std::uint64_t master_seed);

struct BnDecay {
    std::vector<int> n_grid;
    std::vector<double> p;   // catch-up probability per n
    double fitted_rate = 0;  // negative slope of log p against n
    long trials = 0;
};

// Direct race between n fictitious-tree level times and n+1 adversary
// inter-arrivals; fits the exponential decay of the catch-up probability.
BnDecay estimate_bn_decay(double lambda_a, double lambda_h, double delta,
                          const std::vector<int>& n_grid, long trials,
                          std::uint64_t master_seed);

struct DominanceReport {
    int schedules = 0;
    int skipped = 0;            // liveness mode: fewer than k honest arrivals
    int sz_successes = 0;
    int searched = 0;           // schedules where the exhaustive search ran
    int search_successes = 0;
    long long search_nodes = 0;
    std::vector<int> counterexamples;  // indices of offending schedules
};

// Theorem check at delta = 0, PoW: over random small schedules, whenever an
// exhaustively searched adversary violates persistence of the first honest
// block (or, in liveness mode, unseats the first k honest blocks), the
// pre-mining private attack on that block does too.
DominanceReport sz_dominance_check(int n_events, int k, int n_schedules,
                                   double adv_fraction, std::uint64_t seed,
                                   bool liveness_mode = false,
                                   long long node_budget = 50'000'000);

}  // namespace lcsim
