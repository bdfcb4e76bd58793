#include "lcsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "lcsim/errors.hpp"

namespace lcsim {

namespace {
// Guards float round-off when an evaluation point coincides with a jump:
// event times are continuous draws or well-separated replay values, so a
// nudge this small never crosses a genuine gap.
constexpr double kTimeFudge = 1e-9;
}  // namespace

int StepFunction::at(double t) const {
    int v = 0;
    for (const auto& [time, value] : jumps) {
        if (time > t) break;
        v = value;
    }
    return v;
}

void StepFunction::push(double time, int value) {
    jumps.emplace_back(time, value);
}

AdversaryPartition partition(const Blocktree& tree) {
    const auto& blocks = tree.blocks();
    std::vector<std::size_t> honest_of(blocks.size());  // honest index of governing root
    AdversaryPartition part;
    for (const Block& b : blocks) {
        if (b.honest()) {
            honest_of[b.id] = part.trees.size();
            AdversaryTree t;
            t.honest_index = part.trees.size();
            t.root = b.id;
            part.trees.push_back(std::move(t));
        } else {
            honest_of[b.id] = honest_of[b.parent];
            part.trees[honest_of[b.id]].members.push_back(b.id);
        }
    }
    for (auto& t : part.trees) {
        int max_rel = 0;
        const auto root_depth = blocks[t.root].depth;
        for (BlockId m : t.members) {
            const int rel = static_cast<int>(blocks[m].depth - root_depth);
            if (rel > max_rel) {
                max_rel = rel;
                t.depth.push(blocks[m].mined_at, rel);
            }
        }
    }
    return part;
}

FictitiousHonestTree fictitious_tree(const std::vector<double>& honest_times,
                                     double delta) {
    FictitiousHonestTree f;
    f.delta = delta;
    double last = 0.0;
    for (std::size_t i = 0; i < honest_times.size(); ++i) {
        if (i > 0 && honest_times[i] <= honest_times[i - 1])
            throw NonMonotoneTime("fictitious_tree: times must increase");
        if (f.level_open.empty() || honest_times[i] > last + delta) {
            f.level_open.push_back(honest_times[i]);
            last = honest_times[i];
        }
    }
    return f;
}

int FictitiousHonestTree::depth_at(double t) const {
    auto it = std::upper_bound(level_open.begin(), level_open.end(), t);
    return static_cast<int>(it - level_open.begin());
}

std::vector<double> FictitiousHonestTree::inter_times() const {
    std::vector<double> x;
    x.reserve(level_open.size());
    double prev = 0.0;
    for (double t : level_open) {
        x.push_back(t - prev);
        prev = t;
    }
    return x;
}

int honest_count(const Trace& trace, double t) {
    int n = 0;
    for (std::size_t j = 1; j < trace.honest_index.size(); ++j) {
        if (trace.tree.block(trace.honest_index[j]).mined_at <= t) ++n;
    }
    return n;
}

bool is_loner(const std::vector<double>& honest_times, std::size_t j,
              double delta) {
    if (j < 1 || j > honest_times.size())
        throw IndexOutOfRange("is_loner: honest index out of range");
    const double t = honest_times[j - 1];
    for (std::size_t i = 0; i < honest_times.size(); ++i) {
        if (i == j - 1) continue;
        if (std::abs(honest_times[i] - t) <= delta) return false;
    }
    return true;
}

std::vector<std::size_t> nakamoto_candidates(const Trace& trace, double delta) {
    const auto times = trace.honest_times();
    const auto part = partition(trace.tree);
    const auto fict = fictitious_tree(times, delta);
    const double horizon = trace.horizon;
    std::vector<std::size_t> out;

    auto tau = [&](std::size_t i) { return i == 0 ? 0.0 : times[i - 1]; };

    for (std::size_t j = 1; j <= times.size(); ++j) {
        if (!is_loner(times, j, delta)) continue;
        const double start = times[j - 1] + delta;
        if (start > horizon) continue;
        bool candidate = true;
        for (std::size_t i = 0; i < j && candidate; ++i) {
            const auto& di = part.trees[i].depth;
            const int base = fict.depth_at(tau(i) + delta + kTimeFudge);
            // Both sides only jump upward, so the inequality can first fail
            // at the start point or where D_i jumps.
            auto violated = [&](double t) {
                return di.at(t) >=
                       fict.depth_at(t - delta + kTimeFudge) - base;
            };
            if (violated(start)) {
                candidate = false;
                break;
            }
            for (const auto& [jt, jv] : di.jumps) {
                if (jt <= start || jt > horizon) continue;
                if (violated(jt)) {
                    candidate = false;
                    break;
                }
            }
        }
        if (candidate) out.push_back(j);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> catch_up_events(
    const Trace& trace, double delta) {
    const auto times = trace.honest_times();
    const auto part = partition(trace.tree);
    const auto fict = fictitious_tree(times, delta);
    std::vector<std::pair<std::size_t, std::size_t>> out;

    auto tau = [&](std::size_t i) { return i == 0 ? 0.0 : times[i - 1]; };

    for (std::size_t i = 0; i <= times.size(); ++i) {
        // Even a bare root catches up when no fictitious level opens between
        // tau_i + delta and tau_{k-1}: the required lead is then zero.
        const auto& di = part.trees[i].depth;
        const int base = fict.depth_at(tau(i) + delta + kTimeFudge);
        for (std::size_t k = i + 1; k <= times.size(); ++k) {
            if (tau(k) + delta > trace.horizon) break;
            const int need = fict.depth_at(tau(k - 1) + kTimeFudge) - base;
            if (di.at(tau(k) + delta + kTimeFudge) >= need)
                out.emplace_back(i, k);
        }
    }
    return out;
}

std::vector<std::size_t> nakamoto_candidates_via_catch_up(const Trace& trace,
                                                          double delta) {
    const auto times = trace.honest_times();
    const auto part = partition(trace.tree);
    const auto fict = fictitious_tree(times, delta);
    const auto pairs = catch_up_events(trace, delta);

    auto tau = [&](std::size_t i) { return i == 0 ? 0.0 : times[i - 1]; };

    // blocked_until[i]: largest k with a catch-up pair (i, k); a catch-up at
    // k disqualifies every loner j with i < j < k.
    std::vector<std::size_t> blocked_until(times.size() + 1, 0);
    for (const auto& [i, k] : pairs)
        blocked_until[i] = std::max(blocked_until[i], k);
    // End-of-horizon states: a tree that has caught up with the fictitious
    // chain's progress at the horizon disqualifies every later loner.
    std::vector<bool> blocked_forever(times.size() + 1, false);
    for (std::size_t i = 0; i <= times.size(); ++i) {
        const auto& di = part.trees[i].depth;
        const int base = fict.depth_at(tau(i) + delta + kTimeFudge);
        const int need = fict.depth_at(trace.horizon - delta + kTimeFudge) - base;
        if (di.at(trace.horizon) >= need) blocked_forever[i] = true;
    }

    std::vector<std::size_t> out;
    for (std::size_t j = 1; j <= times.size(); ++j) {
        if (!is_loner(times, j, delta)) continue;
        if (times[j - 1] + delta > trace.horizon) continue;
        bool ok = true;
        for (std::size_t i = 0; i < j && ok; ++i)
            ok = !blocked_forever[i] && blocked_until[i] <= j;
        if (ok) out.push_back(j);
    }
    return out;
}

namespace {

// Per-node tip history replayer over the chronological view log.
struct TipCursor {
    std::vector<BlockId> tips;
    explicit TipCursor(const Trace& trace)
        : tips(trace.config.n_nodes, kGenesis) {}
    void apply(const ViewEvent& e) { tips[e.node] = e.tip; }
};

}  // namespace

std::vector<PersistenceViolation> check_persistence(const Trace& trace, int k) {
    if (k < 1) throw InvalidArgument("check_persistence: k must be >= 1");
    const auto& tree = trace.tree;
    TipCursor cursor(trace);
    std::map<BlockId, std::size_t> confirmed;  // block -> log index of confirmation
    std::set<BlockId> violated;
    std::vector<PersistenceViolation> out;

    for (std::size_t idx = 0; idx < trace.view_log.size(); ++idx) {
        const ViewEvent& e = trace.view_log[idx];
        cursor.apply(e);
        // Violations first: blocks confirmed strictly earlier in the log
        // that this node's new chain no longer contains.
        for (const auto& [b, cidx] : confirmed) {
            if (cidx >= idx || violated.count(b)) continue;
            if (!tree.on_chain(b, e.tip)) {
                violated.insert(b);
                out.push_back({b, e.time, tree.block(b).depth});
            }
        }
        // Then new confirmations: every block at least k-deep on this node's
        // chain, i.e. the chain prefix ending k-1 blocks below the tip.
        // Confirmed sets are ancestor-closed, so stop at the first block
        // already seen.
        const std::uint32_t len = e.length;
        if (len + 1 >= static_cast<std::uint32_t>(k)) {
            const std::uint32_t max_depth =
                len + 1 - static_cast<std::uint32_t>(k);
            BlockId b = e.tip;
            while (tree.block(b).depth > max_depth) b = tree.block(b).parent;
            for (;;) {
                if (confirmed.count(b)) break;
                confirmed.emplace(b, idx);
                if (b == kGenesis) break;
                b = tree.block(b).parent;
            }
        }
    }
    return out;
}

std::vector<bool> stable_honest_blocks(const Trace& trace) {
    const auto& tree = trace.tree;
    const std::size_t m = trace.honest_blocks();
    std::vector<bool> stable(m + 1, false);
    for (std::size_t j = 1; j <= m; ++j) {
        const BlockId b = trace.honest_index[j];
        TipCursor cursor(trace);
        std::vector<bool> on(trace.config.n_nodes, false);
        int all_count = 0;
        bool seen_all = false;
        bool left_after = false;
        for (const ViewEvent& e : trace.view_log) {
            cursor.apply(e);
            const bool now_on = tree.on_chain(b, e.tip);
            if (now_on != on[e.node]) {
                on[e.node] = now_on;
                all_count += now_on ? 1 : -1;
            }
            if (all_count == trace.config.n_nodes) seen_all = true;
            else if (seen_all) left_after = true;
        }
        stable[j] = seen_all && !left_after;
    }
    return stable;
}

std::vector<LivenessViolation> check_liveness(const Trace& trace, double u) {
    if (u <= 0.0) throw InvalidArgument("check_liveness: window must be > 0");
    const auto times = trace.honest_times();
    const auto stable = stable_honest_blocks(trace);
    std::vector<LivenessViolation> out;
    std::vector<double> starts{0.0};
    starts.insert(starts.end(), times.begin(), times.end());
    for (double t0 : starts) {
        if (t0 + u > trace.horizon) break;
        bool ok = false;
        for (std::size_t j = 1; j <= times.size(); ++j) {
            if (times[j - 1] > t0 && times[j - 1] <= t0 + u && stable[j]) {
                ok = true;
                break;
            }
        }
        if (!ok) out.push_back({t0, u});
    }
    return out;
}

GrowthBoundResult verify_growth_bound(const Trace& trace) {
    const double delta = trace.config.delta;
    const auto fict = fictitious_tree(trace.honest_times(), delta);

    for (int p = 0; p < trace.config.n_nodes; ++p) {
        // L_p as a step function.
        StepFunction lp;
        int cur = 0;
        for (const ViewEvent& e : trace.view_log) {
            if (e.node != p) continue;
            if (static_cast<int>(e.length) > cur) {
                cur = static_cast<int>(e.length);
                lp.push(e.time, cur);
            }
        }
        // Change points of psi(s) = D_h(s+delta) - L_p(s) and of
        // phi(t) = D_h(t-delta) - L_p(t).
        std::vector<double> s_grid{0.0}, t_grid;
        for (double o : fict.level_open) {
            if (o - delta > 0.0) s_grid.push_back(o - delta);
            t_grid.push_back(o + delta);
        }
        for (const auto& [time, value] : lp.jumps) {
            s_grid.push_back(time);
            t_grid.push_back(time);
        }
        t_grid.push_back(trace.horizon);
        std::sort(s_grid.begin(), s_grid.end());
        std::sort(t_grid.begin(), t_grid.end());

        auto psi = [&](double s) {
            return fict.depth_at(s + delta + kTimeFudge) -
                   lp.at(s + kTimeFudge);
        };
        auto phi = [&](double t) {
            return fict.depth_at(t - delta + kTimeFudge) -
                   lp.at(t + kTimeFudge);
        };

        // For t in a constant piece [c_i, c_{i+1}) the binding constraint is
        // the infimum of psi over s < c_{i+1} - 2*delta.
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double t_lo = t_grid[i];
            if (t_lo > trace.horizon) break;
            const double t_hi =
                i + 1 < t_grid.size() ? std::min(t_grid[i + 1], trace.horizon)
                                      : trace.horizon;
            const double s_lim = t_hi - 2.0 * delta;
            const int f = phi(t_lo);
            int best = INT32_MAX;
            double best_s = 0.0;
            for (double s : s_grid) {
                if (s >= s_lim - kTimeFudge) break;
                const int g = psi(s);
                if (g < best) {
                    best = g;
                    best_s = s;
                }
            }
            if (best == INT32_MAX) continue;
            if (f > best) {
                GrowthBoundResult r;
                r.ok = false;
                r.node = p;
                r.s = best_s;
                r.t = t_lo;
                r.lhs = fict.depth_at(t_lo - delta + kTimeFudge) -
                        fict.depth_at(best_s + delta + kTimeFudge);
                r.rhs = lp.at(t_lo + kTimeFudge) - lp.at(best_s + kTimeFudge);
                return r;
            }
        }
    }
    return {};
}

LedgerReport analyze(const Trace& trace, int k, double liveness_window) {
    LedgerReport r;
    r.nakamoto_candidates = nakamoto_candidates(trace, trace.config.delta);
    const auto times = trace.honest_times();
    for (std::size_t j = 1; j <= times.size(); ++j)
        if (is_loner(times, j, trace.config.delta)) r.loners.push_back(j);
    r.catch_ups = catch_up_events(trace, trace.config.delta);
    r.persistence_violations = check_persistence(trace, k);
    if (liveness_window > 0.0)
        r.liveness_violations = check_liveness(trace, liveness_window);
    return r;
}

}  // namespace lcsim
