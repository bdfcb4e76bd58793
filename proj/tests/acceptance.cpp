// Acceptance gate: one criterion per invocation (argv[1] = 1..11), printing
// a single PASS/FAIL line plus supporting numbers.  Exit 0 iff the criterion
// holds.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcsim/analysis.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/errors.hpp"
#include "lcsim/mining.hpp"
#include "lcsim/montecarlo.hpp"
#include "lcsim/rng.hpp"
#include "lcsim/strategies.hpp"
#include "lcsim/thresholds.hpp"
#include "lcsim/trace_io.hpp"

using namespace lcsim;

namespace {

std::ostringstream detail;

// ---------- 1: threshold exactness ----------
bool c1_thresholds() {
    const double t0 = private_threshold(0.0, ThresholdModel::PowPs);
    const double c0 = private_threshold(0.0, ThresholdModel::Chia);
    const double t1 = private_threshold(1.0, ThresholdModel::PowPs);
    detail << "pow_ps(0)=" << t0 << " chia(0)=" << c0 << " pow_ps(1)=" << t1;
    return std::abs(t0 - 0.5) < 1e-9 &&
           std::abs(c0 - 1.0 / (1.0 + std::exp(1.0))) < 1e-9 &&
           std::abs(t1 - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-9;
}

// ---------- 2: BRW growth ----------
bool c2_brw_growth() {
    const double e = std::exp(1.0);
    double depth_sum = 0.0;
    const int growth_trials = 10000;
    for (int i = 0; i < growth_trials; ++i)
        depth_sum += brw_simulate(1.0, 8.0, derive_seed(21, i)).depth_at(8.0);
    const double growth = depth_sum / growth_trials / (8.0 * e);
    double fp_sum = 0.0;
    const int fp_trials = 1000;
    for (int i = 0; i < fp_trials; ++i)
        fp_sum += brw_first_passage(1.0, 25, derive_seed(22, i));
    const double fp = fp_sum / fp_trials / 25.0;
    detail << "mean D0(8)/(8e)=" << growth << " (need [0.75,1.00]); "
           << "mean S*_25/25=" << fp << " (need [" << 1.0 / e << ","
           << 1.3 / e << "])";
    return growth >= 0.75 && growth <= 1.00 && fp >= 1.0 / e && fp <= 1.3 / e;
}

// ---------- 3: BRW tail bound ----------
bool c3_brw_tail() {
    const double e = std::exp(1.0);
    const int trials = 10000;
    bool ok = true;
    for (double t : {1.0, 2.0, 4.0}) {
        const int m_lo = static_cast<int>(std::ceil(e * t)) + 1;
        std::vector<int> counts(7, 0);
        for (int i = 0; i < trials; ++i) {
            const auto d = brw_simulate(
                1.0, t, derive_seed(31, static_cast<int>(t * 100) + i))
                               .depth_at(t);
            for (int m = m_lo; m <= m_lo + 6; ++m)
                if (static_cast<int>(d) >= m) ++counts[m - m_lo];
        }
        for (int m = m_lo; m <= m_lo + 6; ++m) {
            const double emp = static_cast<double>(counts[m - m_lo]) / trials;
            const double bound = chia_tail_bound(1.0, t, m);
            const double sigma =
                std::sqrt(std::max(bound * (1.0 - bound), emp * (1.0 - emp)) /
                          trials) +
                1e-12;
            if (emp > bound + 3.0 * sigma) {
                detail << "violated at t=" << t << " m=" << m << " emp=" << emp
                       << " bound=" << bound << "; ";
                ok = false;
            }
        }
    }
    if (ok) detail << "all cells within bound+3sigma";
    return ok;
}

// ---------- 4: oracle equivalence for the private attack ----------
// Two-counter oracle: merged Poisson events; adversary blocks count only
// after the first honest block; success once H >= k has latched and A > H.
double private_race_oracle(double lh, double la, int k, double horizon,
                           long trials, std::uint64_t seed) {
    long wins = 0;
    for (long i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i));
        double t = 0.0;
        long H = 0, A = 0;
        bool conf = false, win = false, target_mined = false;
        while (true) {
            t += rng.exponential(lh + la);
            if (t > horizon) break;
            if (rng.uniform01() <= la / (lh + la)) {
                if (target_mined) ++A;
            } else {
                ++H;
                target_mined = true;
            }
            if (H >= k) conf = true;
            if (conf && A > H) {
                win = true;
                break;
            }
        }
        if (win) ++wins;
    }
    return static_cast<double>(wins) / static_cast<double>(trials);
}

bool c4_oracle_equivalence() {
    SimulationConfig cfg;
    cfg.lambda_h = 1.0;
    cfg.lambda_a = 0.5;
    cfg.delta = 0.0;
    cfg.n_nodes = 2;
    cfg.horizon = 60.0;
    const long trials = 10000;
    bool ok = true;
    double prev = 1.1;
    for (int k : {2, 4, 6}) {
        StrategySpec spec;
        spec.kind = StrategySpec::Kind::PrivateAttack;
        spec.target_j = 1;
        spec.k = k;
        const auto eng = estimate_attack_success(cfg, spec, trials, 41);
        const double orc =
            private_race_oracle(1.0, 0.5, k, cfg.horizon, trials, 42);
        const double se_o = std::sqrt(orc * (1.0 - orc) / trials);
        const double tol = 2.0 * std::sqrt(eng.std_error * eng.std_error +
                                           se_o * se_o);
        detail << "k=" << k << " engine=" << eng.mean << " oracle=" << orc
               << " tol=" << tol << "; ";
        if (std::abs(eng.mean - orc) > tol) ok = false;
        if (!(eng.mean < prev)) ok = false;  // strictly decreasing in k
        prev = eng.mean;
    }
    return ok;
}

// ---------- 5: Chia attack beats PoW at matched rates ----------
bool c5_chia_vs_pow() {
    SimulationConfig cfg;
    cfg.lambda_h = 1.0;
    cfg.lambda_a = 0.5;
    cfg.delta = 0.0;
    cfg.n_nodes = 2;
    cfg.horizon = 12.0;
    const long trials = 1000;
    StrategySpec spec;
    spec.kind = StrategySpec::Kind::PrivateAttack;
    spec.target_j = 1;
    spec.k = 4;
    const auto pow_est = estimate_attack_success(cfg, spec, trials, 51);
    cfg.model = Model::Chia;
    spec.kind = StrategySpec::Kind::NasChia;
    const auto chia_est = estimate_attack_success(cfg, spec, trials, 52);
    const double gap = chia_est.mean - pow_est.mean;
    const double se = std::sqrt(pow_est.std_error * pow_est.std_error +
                                chia_est.std_error * chia_est.std_error);
    detail << "pow=" << pow_est.mean << " chia=" << chia_est.mean
           << " gap=" << gap << " 2se=" << 2.0 * se;
    return gap > 2.0 * se;
}

// ---------- 6: balance-attack replay ----------
bool c6_balance_replay() {
    const int periods = 20;
    auto parsed = make_balance_replay(periods);
    SimulationConfig cfg;
    cfg.lambda_h = 2.0 / 3.0;
    cfg.lambda_a = 1.0 / 3.0;
    cfg.model = Model::PS;
    cfg.n_nodes = 2;
    cfg.horizon = parsed.schedule.horizon;
    auto strat = balance_strategy();
    Trace t = replay_simulation(parsed.schedule, cfg, *strat,
                                parsed.honest_nodes);
    const auto cands = nakamoto_candidates(t, cfg.delta);
    const int k_max = static_cast<int>(cfg.horizon / 3.0);
    bool ok = cands.empty();
    detail << "candidates=" << cands.size() << " k_max=" << k_max
           << " missing_k=";
    for (int k = 1; k <= k_max; ++k) {
        if (check_persistence(t, k).empty()) {
            detail << k << " ";
            ok = false;
        }
    }
    if (ok) detail << "none";
    return ok;
}

// ---------- 7: pre-mining dominance ----------
bool c7_dominance() {
    bool ok = true;
    long long searched = 0, sz_wins = 0;
    for (bool liveness : {false, true}) {
        for (int k : {1, 2}) {
            const auto rep = sz_dominance_check(
                /*n_events=*/10, /*k=*/k, /*n_schedules=*/300,
                /*adv_fraction=*/0.5, /*seed=*/70 + k + (liveness ? 10 : 0),
                liveness);
            searched += rep.searched;
            sz_wins += rep.sz_successes;
            if (!rep.counterexamples.empty()) {
                ok = false;
                detail << (liveness ? "liveness" : "persistence") << " k=" << k
                       << " counterexamples=" << rep.counterexamples.size()
                       << "; ";
            }
        }
    }
    detail << "schedules=1200 searched=" << searched
           << " sz_successes=" << sz_wins;
    return ok;
}

// ---------- 8: structural invariant suite ----------
bool c8_structural() {
    long traces = 0, failures = 0;
    auto check_trace = [&](const Trace& t) {
        ++traces;
        bool ok = true;
        // partition completeness
        const auto part = partition(t.tree);
        std::size_t covered = part.trees.size();
        for (const auto& tree : part.trees) covered += tree.members.size();
        if (covered - part.trees.size() + t.honest_blocks() + 1 != t.tree.size())
            ok = false;
        // chain growth bound (delta = 0 reduces to the arrival-count law)
        if (!verify_growth_bound(t).ok) ok = false;
        // loner depth uniqueness
        const auto times = t.honest_times();
        for (std::size_t j = 1; j <= t.honest_blocks() && ok; ++j) {
            if (!is_loner(times, j, t.config.delta)) continue;
            const auto dj = t.tree.block(t.honest_index[j]).depth;
            for (std::size_t i = 1; i <= t.honest_blocks(); ++i)
                if (i != j && t.tree.block(t.honest_index[i]).depth == dj)
                    ok = false;
        }
        // candidate detection equivalence
        const auto cands = nakamoto_candidates(t, t.config.delta);
        if (cands != nakamoto_candidates_via_catch_up(t, t.config.delta))
            ok = false;
        // candidate stabilization: candidates sit in every final chain
        for (std::size_t j : cands) {
            if (times[j - 1] + t.config.delta > t.horizon) continue;
            for (BlockId tip : t.final_tips)
                if (!t.tree.on_chain(t.honest_index[j], tip)) ok = false;
        }
        if (!ok) ++failures;
    };

    // varied corpus
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto run = [&](Model m, double delta, double la,
                       std::unique_ptr<Strategy> s, double horizon) {
            SimulationConfig cfg;
            cfg.lambda_h = 1.0;
            cfg.lambda_a = la;
            cfg.delta = delta;
            cfg.model = m;
            cfg.n_nodes = 3;
            cfg.horizon = horizon;
            cfg.seed = seed;
            try {
                check_trace(run_simulation(cfg, *s));
            } catch (const TargetNeverMined&) {
            }
        };
        run(Model::PoW, 0.0, 0.4, private_attack(1, 3), 40.0);
        run(Model::PoW, 0.3, 0.4, private_attack(2, 3), 40.0);
        run(Model::PoW, 0.0, 0.5, sz_premine(1, 2), 40.0);
        run(Model::PS, 0.2, 0.3, balance_strategy(), 40.0);
        run(Model::PoW, 0.5, 0.0, null_strategy(), 40.0);
        run(Model::Chia, 0.1, 0.3, nas_chia_strategy(1, 3), 12.0);
    }
    // many small traces for the detection-equivalence law
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        SimulationConfig cfg;
        cfg.lambda_h = 1.0;
        cfg.lambda_a = 0.25 + 0.05 * static_cast<double>(seed % 5);
        cfg.delta = 0.1 * static_cast<double>(seed % 4);
        cfg.n_nodes = 2;
        cfg.horizon = 20.0;
        cfg.seed = 1000 + seed;
        auto s = private_attack(1, 2);
        try {
            check_trace(run_simulation(cfg, *s));
        } catch (const TargetNeverMined&) {
        }
    }
    detail << "traces=" << traces << " failures=" << failures;
    return failures == 0 && traces > 1000;
}

// ---------- 9: statistical laws ----------
bool c9_statistics() {
    bool ok = true;
    // loner fraction vs exp(-2 lambda_h delta)
    {
        const double lh = 1.0, delta = 0.3, horizon = 100.0;
        const int trials = 100;
        std::vector<double> fracs;
        for (int i = 0; i < trials; ++i) {
            auto s = sample_poisson_schedule(lh, 0.0, horizon, derive_seed(91, i));
            std::vector<double> times;
            for (const auto& e : s.events) times.push_back(e.time);
            if (times.empty()) continue;
            int loners = 0;
            for (std::size_t j = 1; j <= times.size(); ++j)
                if (is_loner(times, j, delta)) ++loners;
            fracs.push_back(static_cast<double>(loners) /
                            static_cast<double>(times.size()));
        }
        double mean = 0.0;
        for (double f : fracs) mean += f;
        mean /= static_cast<double>(fracs.size());
        double var = 0.0;
        for (double f : fracs) var += (f - mean) * (f - mean);
        var /= static_cast<double>(fracs.size() - 1);
        const double se = std::sqrt(var / static_cast<double>(fracs.size()));
        const double target = std::exp(-2.0 * lh * delta);
        detail << "loner mean=" << mean << " target=" << target
               << " 3se=" << 3.0 * se << "; ";
        if (std::abs(mean - target) > 3.0 * se) ok = false;
    }
    // fictitious-tree level gaps: E[X_d] = delta + 1/lambda_h for d >= 2
    {
        const double lh = 1.0, delta = 0.4, horizon = 200.0;
        const int trials = 60;
        std::vector<double> means;
        for (int i = 0; i < trials; ++i) {
            auto s = sample_poisson_schedule(lh, 0.0, horizon, derive_seed(92, i));
            std::vector<double> times;
            for (const auto& e : s.events) times.push_back(e.time);
            auto f = fictitious_tree(times, delta);
            const auto x = f.inter_times();
            if (x.size() < 2) continue;
            double m = 0.0;
            for (std::size_t d = 1; d < x.size(); ++d) m += x[d];
            means.push_back(m / static_cast<double>(x.size() - 1));
        }
        double mean = 0.0;
        for (double m : means) mean += m;
        mean /= static_cast<double>(means.size());
        double var = 0.0;
        for (double m : means) var += (m - mean) * (m - mean);
        var /= static_cast<double>(means.size() - 1);
        const double se = std::sqrt(var / static_cast<double>(means.size()));
        const double target = delta + 1.0 / lh;
        detail << "X_d mean=" << mean << " target=" << target
               << " 3se=" << 3.0 * se << "; ";
        if (std::abs(mean - target) > 3.0 * se) ok = false;
    }
    // catch-up frequency decays in k for a sub-threshold adversary
    {
        SimulationConfig cfg;
        cfg.lambda_h = 1.0;
        cfg.lambda_a = 0.4;
        cfg.delta = 0.0;
        cfg.n_nodes = 1;
        cfg.horizon = 30.0;
        const int trials = 1500;
        const int k_max = 6;
        std::vector<long> hits(k_max + 1, 0);
        long usable = 0;
        for (int i = 0; i < trials; ++i) {
            cfg.seed = derive_seed(93, i);
            auto s = private_attack(1, 3);
            Trace t;
            try {
                t = run_simulation(cfg, *s);
            } catch (const TargetNeverMined&) {
                continue;
            }
            if (t.honest_blocks() < static_cast<std::size_t>(k_max)) continue;
            ++usable;
            for (const auto& [ti, kk] : catch_up_events(t, 0.0))
                if (ti == 0 && kk <= static_cast<std::size_t>(k_max))
                    ++hits[kk];
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (int k = 1; k <= k_max; ++k) {
            if (hits[k] == 0) continue;
            const double p = static_cast<double>(hits[k]) /
                             static_cast<double>(usable);
            sx += k;
            sy += std::log(p);
            sxx += static_cast<double>(k) * k;
            sxy += k * std::log(p);
            ++m;
        }
        const double slope =
            (m * sxy - sx * sy) / (m * sxx - sx * sx);
        detail << "catch-up log-slope=" << slope << " points=" << m;
        if (!(m >= 2 && slope < 0.0)) ok = false;
    }
    return ok;
}

// ---------- 10: Nakamoto frequency gate ----------
bool c10_nakamoto_gate() {
    SimulationConfig cfg;
    cfg.lambda_h = 0.75;
    cfg.lambda_a = 0.25;
    cfg.delta = 0.1;  // lambda * delta = 0.1
    cfg.model = Model::PS;
    cfg.n_nodes = 3;
    cfg.horizon = 200.0;
    StrategySpec spec;
    spec.kind = StrategySpec::Kind::Balance;
    const auto freq = estimate_nakamoto_frequency(cfg, spec, 1000, 101);
    detail << "freq=" << freq.mean << " ci_lo=" << freq.ci_lo << "; gaps=";
    bool ok = freq.ci_lo > 0.0;
    double prev = 1.1;
    for (double w : {5.0, 10.0, 20.0}) {
        const auto gap = estimate_window_gap(cfg, spec, w, 300, 102);
        detail << gap.mean << " ";
        if (gap.mean > prev) ok = false;  // nonincreasing in window length
        prev = gap.mean;
    }
    return ok;
}

// ---------- 11: CLI determinism ----------
bool c11_determinism() {
    const std::string cli = LCSIM_CLI_PATH;
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"simulate",
         "simulate --seed 7 --lambda-h 1 --lambda-a 0.4 --delta 0.2 "
         "--horizon 20 --strategy private --target-j 1 --k 3 --nodes 2"},
        {"replay",
         "replay --balance-periods 5 --model ps --strategy balance "
         "--lambda-h 0.67 --lambda-a 0.33 --nodes 2"},
        {"attack",
         "attack --seed 3 --lambda 1 --beta 0.3 --horizon 25 "
         "--strategy private --k 3 --trials 50 --nodes 2"},
        {"nakamoto",
         "nakamoto --seed 5 --lambda-h 1 --lambda-a 0.2 --delta 0.2 "
         "--horizon 50 --trials 20 --nodes 2"},
        {"thresholds", "thresholds --grid 0:0.5:2"},
        {"brw", "brw --seed 9 --t 2 --trials 50 --m 7 --first-passage 4"},
        {"dominance", "dominance --seed 1 --events 6 --schedules 20 --k 2"},
    };
    bool ok = true;
    for (const auto& [name, args] : cases) {
        std::string out1 = "det_" + name + "_1.out";
        std::string out2 = "det_" + name + "_2.out";
        for (const std::string& out : {out1, out2}) {
            const std::string cmd =
                "\"" + cli + "\" " + args + " --out " + out;
            if (std::system(cmd.c_str()) != 0) {
                detail << name << " exited nonzero; ";
                ok = false;
            }
        }
        std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        if (s1.str().empty() || s1.str() != s2.str()) {
            detail << name << " outputs differ; ";
            ok = false;
        }
    }
    if (ok) detail << "all subcommands byte-identical";
    return ok;
}

struct Criterion {
    const char* name;
    bool (*fn)();
};

const Criterion kCriteria[] = {
    {"threshold-exactness", c1_thresholds},
    {"brw-growth", c2_brw_growth},
    {"brw-tail-bound", c3_brw_tail},
    {"private-attack-oracle", c4_oracle_equivalence},
    {"chia-beats-pow", c5_chia_vs_pow},
    {"balance-replay", c6_balance_replay},
    {"premine-dominance", c7_dominance},
    {"structural-invariants", c8_structural},
    {"statistical-laws", c9_statistics},
    {"nakamoto-frequency-gate", c10_nakamoto_gate},
    {"determinism", c11_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: lcsim_acceptance <criterion 1..11>\n";
        return 2;
    }
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 11) {
        std::cerr << "criterion out of range\n";
        return 2;
    }
    const auto& c = kCriteria[n - 1];
    bool ok = false;
    try {
        ok = c.fn();
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    std::printf("ACCEPTANCE %2d %-25s %s\n", n, c.name, ok ? "PASS" : "FAIL");
    if (!detail.str().empty()) std::printf("    %s\n", detail.str().c_str());
    return ok ? 0 : 1;
}
