#include "lcsim/mining.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lcsim/errors.hpp"
#include "lcsim/rng.hpp"

namespace lcsim {

std::size_t MiningSchedule::honest_count() const {
    std::size_t n = 0;
    for (const auto& e : events)
        if (!e.adversary) ++n;
    return n;
}

std::size_t MiningSchedule::adversary_count() const {
    return events.size() - honest_count();
}

MiningSchedule sample_poisson_schedule(double lambda_h, double lambda_a,
                                       double horizon, std::uint64_t seed) {
    if (lambda_h < 0.0 || lambda_a < 0.0)
        throw InvalidRate("sample_poisson_schedule: negative rate");
    if (horizon <= 0.0)
        throw InvalidArgument("sample_poisson_schedule: horizon must be positive");
    MiningSchedule s;
    s.horizon = horizon;
    s.lambda_h = lambda_h;
    s.lambda_a = lambda_a;
    const double total = lambda_h + lambda_a;
    if (total == 0.0) return s;
    // Merged process + thinning: keeps sample paths coupled across rate
    // splits at a fixed total rate and seed.
    Rng rng(seed);
    double t = 0.0;
    const double p_adv = lambda_a / total;
    for (;;) {
        t += rng.exponential(total);
        if (t > horizon) break;
        s.events.push_back({t, rng.uniform01() <= p_adv});
    }
    return s;
}

std::uint32_t BrwSample::depth_at(double t) const {
    std::uint32_t d = 0;
    for (const auto& [time, value] : depth_jumps) {
        if (time > t) break;
        d = value;
    }
    return d;
}

namespace {

// Pending birth: the next child of some materialized block. Because each
// block's children form a Poisson stream, after a birth fires the parent's
// following child is again memoryless, so one queue entry per parent
// suffices.
struct Birth {
    double time;
    std::uint32_t parent_depth;
    bool operator>(const Birth& o) const { return time > o.time; }
};

using BirthQueue = std::priority_queue<Birth, std::vector<Birth>, std::greater<Birth>>;

}  // namespace

BrwSample brw_simulate(double lambda_a, double t_max, std::uint64_t seed,
                       std::size_t population_cap) {
    if (lambda_a <= 0.0) throw InvalidRate("brw_simulate: rate must be positive");
    if (t_max < 0.0) throw InvalidArgument("brw_simulate: negative t_max");
    Rng rng(seed);
    BirthQueue queue;
    {
        double first = rng.exponential(lambda_a);
        if (first <= t_max) queue.push({first, 0});
    }
    BrwSample out;
    std::uint32_t max_depth = 0;
    while (!queue.empty()) {
        Birth b = queue.top();
        queue.pop();
        // Materialize the child and reschedule the parent's stream.
        if (++out.population > population_cap)
            throw PopulationOverflow("brw_simulate: population cap exceeded");
        const std::uint32_t child_depth = b.parent_depth + 1;
        if (child_depth > max_depth) {
            max_depth = child_depth;
            out.depth_jumps.emplace_back(b.time, max_depth);
            out.first_passage.emplace(max_depth, b.time);
        }
        double parent_next = b.time + rng.exponential(lambda_a);
        if (parent_next <= t_max) queue.push({parent_next, b.parent_depth});
        double child_first = b.time + rng.exponential(lambda_a);
        if (child_first <= t_max) queue.push({child_first, child_depth});
    }
    return out;
}

double brw_first_passage(double lambda_a, std::uint32_t k, std::uint64_t seed,
                         std::size_t population_cap) {
    if (lambda_a <= 0.0) throw InvalidRate("brw_first_passage: rate must be positive");
    if (k < 1) throw InvalidArgument("brw_first_passage: k must be >= 1");
    Rng rng(seed);
    BirthQueue queue;
    queue.push({rng.exponential(lambda_a), 0});
    std::size_t population = 1;
    // Births are expanded in time order, so the first depth-k birth is the
    // minimum over all level-k vertices; no block born later matters.
    while (!queue.empty()) {
        Birth b = queue.top();
        queue.pop();
        if (++population > population_cap)
            throw PopulationOverflow("brw_first_passage: population cap exceeded");
        const std::uint32_t child_depth = b.parent_depth + 1;
        if (child_depth == k) return b.time;
        queue.push({b.time + rng.exponential(lambda_a), b.parent_depth});
        queue.push({b.time + rng.exponential(lambda_a), child_depth});
    }
    throw PopulationOverflow("brw_first_passage: exhausted queue");  // unreachable
}

double chia_tail_bound(double lambda_a, double t, std::uint32_t m) {
    if (m == 0) throw InvalidArgument("chia_tail_bound: m must be >= 1");
    if (lambda_a < 0.0) throw InvalidRate("chia_tail_bound: negative rate");
    if (t < 0.0) throw InvalidArgument("chia_tail_bound: negative t");
    const double e = std::exp(1.0);
    double bound = std::pow(e * lambda_a * t / static_cast<double>(m),
                            static_cast<double>(m));
    return std::clamp(bound, 0.0, 1.0);
}

}  // namespace lcsim
