#include "lcsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "lcsim/analysis.hpp"
#include "lcsim/errors.hpp"
#include "lcsim/rng.hpp"

namespace lcsim {

Estimate make_estimate(double mean, double std_error, long trials) {
    Estimate e;
    e.mean = mean;
    e.std_error = std_error;
    e.trials = trials;
    e.ci_lo = mean - 1.96 * std_error;
    e.ci_hi = mean + 1.96 * std_error;
    return e;
}

Estimate binomial_estimate(long successes, long trials) {
    if (trials < 1) throw InvalidArgument("binomial_estimate: trials must be >= 1");
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return make_estimate(p, se, trials);
}

namespace {

bool trial_attack_success(const SimulationConfig& config,
                          const StrategySpec& spec, std::uint64_t seed) {
    SimulationConfig cfg = config;
    cfg.seed = seed;
    auto strategy = make_strategy(spec);
    Trace trace = run_simulation(cfg, *strategy);
    auto violations = check_persistence(trace, spec.k);
    if (!spec.has_target()) return !violations.empty();
    if (spec.target_j >= trace.honest_index.size()) return false;
    const BlockId target = trace.honest_index[spec.target_j];
    for (const auto& v : violations)
        if (v.block == target) return true;
    return false;
}

}  // namespace

Estimate estimate_attack_success(const SimulationConfig& config,
                                 const StrategySpec& spec, long trials,
                                 std::uint64_t master_seed) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    long successes = 0, failed = 0;
    for (long t = 0; t < trials; ++t) {
        try {
            if (trial_attack_success(config, spec,
                                     derive_seed(master_seed, static_cast<std::uint64_t>(t))))
                ++successes;
        } catch (const Error&) {
            ++failed;
        }
    }
    const long ok = trials - failed;
    Estimate e = ok > 0 ? binomial_estimate(successes, ok)
                        : make_estimate(0.0, 0.0, 0);
    e.failed_trials = failed;
    return e;
}

Estimate estimate_nakamoto_frequency(const SimulationConfig& config,
                                     const StrategySpec& spec, long trials,
                                     std::uint64_t master_seed) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    std::vector<double> fracs;
    long failed = 0;
    for (long t = 0; t < trials; ++t) {
        try {
            SimulationConfig cfg = config;
            cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
            auto strategy = make_strategy(spec);
            Trace trace = run_simulation(cfg, *strategy);
            const auto cands = nakamoto_candidates(trace, cfg.delta);
            const auto times = trace.honest_times();
            // Candidacy near the horizon is biased optimistic (less future
            // left to catch up in), so the last 20% is excluded.
            const double cutoff = 0.8 * cfg.horizon;
            long total = 0, hit = 0;
            for (std::size_t j = 1; j <= times.size(); ++j)
                if (times[j - 1] <= cutoff) ++total;
            for (std::size_t j : cands)
                if (times[j - 1] <= cutoff) ++hit;
            if (total == 0) {
                ++failed;
                continue;
            }
            fracs.push_back(static_cast<double>(hit) / static_cast<double>(total));
        } catch (const Error&) {
            ++failed;
        }
    }
    if (fracs.empty()) {
        Estimate e = make_estimate(0.0, 0.0, 0);
        e.failed_trials = failed;
        return e;
    }
    double mean = 0.0;
    for (double f : fracs) mean += f;
    mean /= static_cast<double>(fracs.size());
    double var = 0.0;
    for (double f : fracs) var += (f - mean) * (f - mean);
    var /= fracs.size() > 1 ? static_cast<double>(fracs.size() - 1) : 1.0;
    Estimate e = make_estimate(
        mean, std::sqrt(var / static_cast<double>(fracs.size())),
        static_cast<long>(fracs.size()));
    e.failed_trials = failed;
    return e;
}

Estimate estimate_window_gap(const SimulationConfig& config,
                             const StrategySpec& spec, double window_t,
                             long trials, std::uint64_t master_seed) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (window_t < 0.0) throw InvalidArgument("window must be >= 0");
    const double buf = 0.1 * config.horizon;
    if (window_t > config.horizon - 2.0 * buf)
        throw InvalidArgument("window too long for the configured horizon");
    long gaps = 0, failed = 0;
    for (long t = 0; t < trials; ++t) {
        try {
            SimulationConfig cfg = config;
            cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
            auto strategy = make_strategy(spec);
            Trace trace = run_simulation(cfg, *strategy);
            const auto cands = nakamoto_candidates(trace, cfg.delta);
            const auto times = trace.honest_times();
            // Window start is drawn independently of the window length so
            // that windows nest across lengths at a fixed seed.
            Rng srng(derive_seed(master_seed ^ 0x77f0a5u, static_cast<std::uint64_t>(t)));
            const double s = buf + srng.uniform01() * (cfg.horizon - 2.0 * buf);
            const double end = std::min(s + window_t, cfg.horizon - buf);
            bool gap = true;
            for (std::size_t j : cands) {
                const double tau = times[j - 1];
                if (tau > s && tau <= end) {
                    gap = false;
                    break;
                }
            }
            if (gap) ++gaps;
        } catch (const Error&) {
            ++failed;
        }
    }
    const long ok = trials - failed;
    Estimate e = ok > 0 ? binomial_estimate(gaps, ok) : make_estimate(0, 0, 0);
    e.failed_trials = failed;
    return e;
}

BnDecay estimate_bn_decay(double lambda_a, double lambda_h, double delta,
                          const std::vector<int>& n_grid, long trials,
                          std::uint64_t master_seed) {
    if (lambda_a <= 0.0 || lambda_h <= 0.0)
        throw InvalidRate("estimate_bn_decay: rates must be positive");
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (n_grid.size() < 2)
        throw InvalidArgument("estimate_bn_decay: need at least two grid points");
    BnDecay out;
    out.n_grid = n_grid;
    out.trials = trials;
    std::uint64_t stream = 0;
    for (int n : n_grid) {
        if (n < 1) throw InvalidArgument("estimate_bn_decay: n must be >= 1");
        long hits = 0;
        Rng rng(derive_seed(master_seed, stream++));
        for (long t = 0; t < trials; ++t) {
            double hsum = rng.exponential(lambda_h);
            for (int i = 1; i < n; ++i)
                hsum += delta + rng.exponential(lambda_h);
            double asum = 0.0;
            for (int i = 0; i <= n; ++i) asum += rng.exponential(lambda_a);
            if (hsum >= asum) ++hits;
        }
        out.p.push_back(static_cast<double>(hits) / static_cast<double>(trials));
    }
    // Least squares of log p against n over the positive estimates.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < out.p.size(); ++i) {
        if (out.p[i] <= 0.0) continue;
        const double x = static_cast<double>(out.n_grid[i]);
        const double y = std::log(out.p[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2)
        throw OutOfRegime("estimate_bn_decay: too few positive estimates to fit");
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.fitted_rate = -slope;
    return out;
}

namespace {

// ---- exhaustive small-instance adversary search (delta = 0, PoW) ----

struct SBlock {
    std::int8_t parent = -1;
    std::uint8_t depth = 0;
    bool honest = false;
    bool published = false;
    bool is_b = false;       // the attacked block (first honest block)
    bool protected_ = false; // liveness mode: one of the first k honest blocks
};

struct SearchState {
    std::vector<SBlock> blocks;  // [0] = genesis
    bool confirmed = false;
    int honest_mined = 0;
};

class DominanceSearch {
  public:
    DominanceSearch(const std::vector<bool>& is_adv, int k, bool liveness,
                    long long budget, long long& nodes)
        : is_adv_(is_adv), k_(k), liveness_(liveness), budget_(budget),
          nodes_(nodes) {}

    bool run() {
        SearchState st;
        st.blocks.push_back(SBlock{-1, 0, true, true, false, false});
        return step(st, 0);
    }

  private:
    static int public_length(const SearchState& st) {
        int L = 0;
        for (const auto& b : st.blocks)
            if (b.published) L = std::max(L, static_cast<int>(b.depth));
        return L;
    }

    // Path from tip to genesis contains a block satisfying pred?
    template <typename Pred>
    static bool path_has(const SearchState& st, int tip, Pred pred) {
        for (int x = tip; x >= 0; x = st.blocks[x].parent)
            if (pred(st.blocks[x])) return true;
        return false;
    }

    // Deepest chain, counting private blocks as releasable, avoiding the
    // attacked block(s).
    int avoiding_depth(const SearchState& st) const {
        int best = 0;
        for (int i = 0; i < static_cast<int>(st.blocks.size()); ++i) {
            const int d = st.blocks[i].depth;
            if (d <= best) continue;
            const bool tainted =
                liveness_ ? path_has(st, i, [](const SBlock& b) { return b.protected_; })
                          : path_has(st, i, [](const SBlock& b) { return b.is_b; });
            if (!tainted) best = d;
        }
        return best;
    }

    int b_depth(const SearchState& st) const {
        for (const auto& b : st.blocks)
            if (b.is_b) return b.depth;
        return -1;
    }

    void update_confirmed(SearchState& st) const {
        if (liveness_ || st.confirmed) return;
        const int db = b_depth(st);
        if (db < 0) return;
        const int L = public_length(st);
        if (L < db + k_ - 1) return;
        // The chain through b must be adoptable: as deep as any public chain
        // (the adversary breaks ties in its favor).
        int through_b = 0;
        for (int i = 0; i < static_cast<int>(st.blocks.size()); ++i) {
            if (!st.blocks[i].published) continue;
            if (path_has(st, i, [](const SBlock& b) { return b.is_b; }))
                through_b = std::max(through_b, static_cast<int>(st.blocks[i].depth));
        }
        if (through_b == L) st.confirmed = true;
    }

    bool success(const SearchState& st) const {
        const int L = public_length(st);
        if (liveness_) {
            if (st.honest_mined < k_) return false;
            return avoiding_depth(st) >= L;
        }
        return st.confirmed && avoiding_depth(st) >= L;
    }

    bool hopeless(const SearchState& st, std::size_t ev) const {
        // Any chain grows by at most one block per remaining event.
        const int remaining = static_cast<int>(is_adv_.size() - ev);
        const int L = public_length(st);
        int need = L;
        if (!liveness_ && !st.confirmed) {
            const int db = b_depth(st);
            need = std::max(need, (db < 0 ? 1 : db) + k_ - 1);
        }
        return avoiding_depth(st) + remaining < need;
    }

    static std::string encode(const SearchState& st) {
        std::string s;
        s.reserve(st.blocks.size() * 3 + 1);
        s.push_back(st.confirmed ? 'C' : 'c');
        for (const auto& b : st.blocks) {
            s.push_back(static_cast<char>(b.parent + 1));
            s.push_back(static_cast<char>((b.honest ? 1 : 0) |
                                          (b.published ? 2 : 0) |
                                          (b.is_b ? 4 : 0) |
                                          (b.protected_ ? 8 : 0)));
        }
        return s;
    }

    bool step(SearchState& st, std::size_t ev) {
        if (++nodes_ > budget_)
            throw SearchBudgetExceeded("dominance search budget exhausted");
        update_confirmed(st);
        if (success(st)) return true;
        if (ev == is_adv_.size()) return false;
        if (hopeless(st, ev)) return false;
        const std::string key = encode(st);
        if (!failed_.insert(key).second) return false;

        const int L = public_length(st);
        if (!is_adv_[ev]) {
            // Honest arrival: the adversary steers ties, so the miner's tip
            // can be any deepest public block.
            for (int p = 0; p < static_cast<int>(st.blocks.size()); ++p) {
                if (!st.blocks[p].published || st.blocks[p].depth != L) continue;
                SearchState next = st;
                SBlock child;
                child.parent = static_cast<std::int8_t>(p);
                child.depth = static_cast<std::uint8_t>(L + 1);
                child.honest = true;
                child.published = true;
                child.is_b = !liveness_ && st.honest_mined == 0;
                child.protected_ = liveness_ && st.honest_mined < k_;
                next.blocks.push_back(child);
                next.honest_mined = st.honest_mined + 1;
                if (step(next, ev + 1)) return true;
            }
            return false;
        }
        // Adversary arrival: any parent, published now (with its private
        // ancestors) or held until the final release.
        for (int p = 0; p < static_cast<int>(st.blocks.size()); ++p) {
            for (int pub = 0; pub < 2; ++pub) {
                SearchState next = st;
                SBlock child;
                child.parent = static_cast<std::int8_t>(p);
                child.depth = static_cast<std::uint8_t>(st.blocks[p].depth + 1);
                child.honest = false;
                child.published = pub != 0;
                next.blocks.push_back(child);
                if (pub) {
                    for (int x = p; x >= 0; x = next.blocks[x].parent)
                        next.blocks[x].published = true;
                }
                if (step(next, ev + 1)) return true;
            }
        }
        return false;
    }

    const std::vector<bool>& is_adv_;
    int k_;
    bool liveness_;
    long long budget_;
    long long& nodes_;
    std::unordered_set<std::string> failed_;
};

MiningSchedule schedule_from_classes(const std::vector<bool>& is_adv) {
    MiningSchedule s;
    s.horizon = static_cast<double>(is_adv.size()) + 1.0;
    for (std::size_t i = 0; i < is_adv.size(); ++i)
        s.events.push_back({static_cast<double>(i + 1), is_adv[i]});
    return s;
}

// Replays the pre-mining private attack on the first honest block and
// decides success, including the case where the attack only completes after
// the horizon: if the public chain never reached length k, the waiting
// adversary wins once future honest growth confirms b, provided its private
// chain already reaches depth k.
bool sz_succeeds(const std::vector<bool>& is_adv, int k, bool liveness) {
    SimulationConfig cfg;
    cfg.model = Model::PoW;
    cfg.delta = 0.0;
    cfg.n_nodes = 1;
    cfg.horizon = static_cast<double>(is_adv.size()) + 1.0;
    cfg.confirm_depth = k;
    auto strategy = sz_premine(1, k, liveness);
    Trace trace =
        replay_simulation(schedule_from_classes(is_adv), cfg, *strategy);
    const std::size_t honest = trace.honest_blocks();
    const std::size_t adv = trace.tree.size() - 1 - honest;
    if (liveness) {
        if (honest < static_cast<std::size_t>(k)) return false;
        for (int m = 1; m <= k; ++m) {
            const BlockId hm = trace.honest_index[static_cast<std::size_t>(m)];
            for (BlockId tip : trace.final_tips)
                if (trace.tree.on_chain(hm, tip)) return false;
        }
        return true;
    }
    const BlockId b = trace.honest_index[1];
    for (const auto& v : check_persistence(trace, k))
        if (v.block == b) return true;
    return honest < static_cast<std::size_t>(k) &&
           adv >= static_cast<std::size_t>(k);
}

}  // namespace

DominanceReport sz_dominance_check(int n_events, int k, int n_schedules,
                                   double adv_fraction, std::uint64_t seed,
                                   bool liveness_mode, long long node_budget) {
    if (n_events < 1 || n_events > 14)
        throw InvalidArgument("sz_dominance_check: n_events must be in [1, 14]");
    if (k < 1) throw InvalidArgument("sz_dominance_check: k must be >= 1");
    if (adv_fraction < 0.0 || adv_fraction > 1.0)
        throw InvalidArgument("sz_dominance_check: bad adversary fraction");
    Rng rng(seed);
    DominanceReport report;
    for (int s = 0; s < n_schedules; ++s) {
        std::vector<bool> is_adv(static_cast<std::size_t>(n_events));
        int honest = 0;
        do {
            honest = 0;
            for (std::size_t i = 0; i < is_adv.size(); ++i) {
                is_adv[i] = rng.bernoulli(adv_fraction);
                if (!is_adv[i]) ++honest;
            }
        } while (honest == 0);
        ++report.schedules;
        if (liveness_mode && honest < k) {
            ++report.skipped;
            continue;
        }
        const bool sz_ok = sz_succeeds(is_adv, k, liveness_mode);
        if (sz_ok) {
            ++report.sz_successes;
            continue;  // search success cannot produce a counterexample
        }
        ++report.searched;
        DominanceSearch search(is_adv, k, liveness_mode, node_budget,
                               report.search_nodes);
        if (search.run()) {
            ++report.search_successes;
            report.counterexamples.push_back(s);
        }
    }
    return report;
}

}  // namespace lcsim
