#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace lcsim {

struct MiningEvent {
    double time = 0.0;
    bool adversary = false;
};

// Time-ordered arrival events for one run: two independent Poisson processes
// (honest at lambda_h, adversary at lambda_a) merged, or a replayed sequence.
struct MiningSchedule {
    std::vector<MiningEvent> events;
    double horizon = 0.0;
    double lambda_h = 0.0;
    double lambda_a = 0.0;

    std::size_t honest_count() const;
    std::size_t adversary_count() const;
};

MiningSchedule sample_poisson_schedule(double lambda_h, double lambda_a,
                                       double horizon, std::uint64_t seed);

// One realization of the adversary tree grown from a single root block where
// every materialized block spawns children as an independent Poisson stream
// of rate lambda_a. depth_jumps records (time, new value) of the running
// maximum depth D_0; first_passage maps k to the birth time of the first
// depth-k block.
struct BrwSample {
    std::vector<std::pair<double, std::uint32_t>> depth_jumps;
    std::size_t population = 1;  // root included
    std::map<std::uint32_t, double> first_passage;

    std::uint32_t depth_at(double t) const;
};

inline constexpr std::size_t kDefaultPopulationCap = 10'000'000;

BrwSample brw_simulate(double lambda_a, double t_max, std::uint64_t seed,
                       std::size_t population_cap = kDefaultPopulationCap);

double brw_first_passage(double lambda_a, std::uint32_t k, std::uint64_t seed,
                         std::size_t population_cap = kDefaultPopulationCap);

// (e*lambda_a*t/m)^m clamped to [0,1].
double chia_tail_bound(double lambda_a, double t, std::uint32_t m);

}  // namespace lcsim
