// Command-line front end: one subcommand per experiment family.
//
// Usage errors exit with status 2; runtime errors exit with status 1 and
// print a JSON error object to stderr.  Outputs go to --out (default stdout)
// and contain no wall-clock timestamps, so fixed seeds give byte-identical
// results.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcsim/analysis.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/errors.hpp"
#include "lcsim/mining.hpp"
#include "lcsim/montecarlo.hpp"
#include "lcsim/strategies.hpp"
#include "lcsim/thresholds.hpp"
#include "lcsim/trace_io.hpp"

namespace {

using nlohmann::json;

struct RateArgs {
    double lambda_h = -1.0;
    double lambda_a = -1.0;
    double lambda = -1.0;
    double beta = -1.0;
};

struct CommonArgs {
    RateArgs rates;
    double delta = 0.0;
    std::string model = "pow";
    std::string strategy = "null";
    int target_j = 1;
    int k = 6;
    int nodes = 5;
    double horizon = 100.0;
    std::uint64_t seed = 0;
    std::string out;
};

void add_rate_flags(CLI::App* cmd, RateArgs& r) {
    auto* lh = cmd->add_option("--lambda-h", r.lambda_h, "honest mining rate");
    auto* la = cmd->add_option("--lambda-a", r.lambda_a, "adversary mining rate");
    auto* l = cmd->add_option("--lambda", r.lambda, "total mining rate");
    auto* b = cmd->add_option("--beta", r.beta, "adversary fraction of --lambda");
    l->needs(b);
    b->needs(l);
    l->excludes(lh)->excludes(la);
    lh->needs(la);
}

// Normalizes either parameterization to (lambda_h, lambda_a).
void resolve_rates(const RateArgs& r, lcsim::SimulationConfig& cfg) {
    if (r.lambda >= 0.0) {
        if (r.beta < 0.0 || r.beta > 1.0)
            throw lcsim::InvalidRate("--beta must lie in [0, 1]");
        cfg.lambda_h = (1.0 - r.beta) * r.lambda;
        cfg.lambda_a = r.beta * r.lambda;
        return;
    }
    if (r.lambda_h >= 0.0) {
        cfg.lambda_h = r.lambda_h;
        cfg.lambda_a = r.lambda_a >= 0.0 ? r.lambda_a : 0.0;
        return;
    }
    // defaults: honest-only unit-rate mining
    cfg.lambda_h = 1.0;
    cfg.lambda_a = 0.0;
}

void add_common_flags(CLI::App* cmd, CommonArgs& a, bool with_strategy = true) {
    add_rate_flags(cmd, a.rates);
    cmd->add_option("--delta", a.delta, "network delay bound")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--model", a.model, "mining model")
        ->check(CLI::IsMember({"pow", "ps", "chia"}));
    if (with_strategy) {
        cmd->add_option("--strategy", a.strategy, "adversary strategy")
            ->check(CLI::IsMember({"null", "private", "sz", "balance", "nas"}));
        cmd->add_option("--target-j", a.target_j, "attacked honest block index")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--k", a.k, "confirmation depth")->check(CLI::PositiveNumber);
    }
    cmd->add_option("--nodes", a.nodes, "honest node count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", a.horizon, "simulated time span")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "master RNG seed");
    cmd->add_option("--out", a.out, "output path (default: stdout)");
}

lcsim::SimulationConfig to_config(const CommonArgs& a) {
    lcsim::SimulationConfig cfg;
    resolve_rates(a.rates, cfg);
    cfg.delta = a.delta;
    cfg.model = lcsim::model_from_name(a.model);
    cfg.n_nodes = a.nodes;
    cfg.horizon = a.horizon;
    cfg.seed = a.seed;
    cfg.confirm_depth = a.k;
    return cfg;
}

lcsim::StrategySpec to_spec(const CommonArgs& a) {
    lcsim::StrategySpec spec;
    spec.kind = lcsim::strategy_kind_from_name(a.strategy);
    spec.target_j = static_cast<std::size_t>(a.target_j);
    spec.k = a.k;
    return spec;
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw lcsim::InvalidArgument("cannot open output file " + out_path);
    f << payload;
}

std::string trace_and_report(const lcsim::Trace& trace, int k) {
    json j;
    j["trace"] = json::parse(lcsim::trace_to_json(trace));
    j["report"] =
        json::parse(lcsim::report_to_json(lcsim::analyze(trace, k), trace));
    return j.dump(2) + "\n";
}

int run_simulate(const CommonArgs& a) {
    auto strategy = lcsim::make_strategy(to_spec(a));
    lcsim::Trace trace = lcsim::run_simulation(to_config(a), *strategy);
    emit(a.out, trace_and_report(trace, a.k));
    return 0;
}

int run_replay(const CommonArgs& a, const std::string& file, int periods) {
    lcsim::ParsedSchedule parsed;
    if (periods > 0) {
        parsed = lcsim::make_balance_replay(periods);
    } else if (file == "-") {
        parsed = lcsim::parse_replay(std::cin);
    } else {
        std::ifstream f(file);
        if (!f) throw lcsim::InvalidArgument("cannot open replay file " + file);
        parsed = lcsim::parse_replay(f);
    }
    auto cfg = to_config(a);
    cfg.horizon = std::max(cfg.horizon, parsed.schedule.horizon);
    auto strategy = lcsim::make_strategy(to_spec(a));
    lcsim::Trace trace = lcsim::replay_simulation(parsed.schedule, cfg, *strategy,
                                                  parsed.honest_nodes);
    emit(a.out, trace_and_report(trace, a.k));
    return 0;
}

int run_attack(const CommonArgs& a, long trials) {
    auto est = lcsim::estimate_attack_success(to_config(a), to_spec(a), trials,
                                              a.seed);
    emit(a.out, lcsim::estimate_to_json(est, "attack_success"));
    return 0;
}

int run_nakamoto(const CommonArgs& a, long trials, double window) {
    if (window > 0.0) {
        auto est = lcsim::estimate_window_gap(to_config(a), to_spec(a), window,
                                              trials, a.seed);
        emit(a.out, lcsim::estimate_to_json(est, "window_gap"));
    } else {
        auto est = lcsim::estimate_nakamoto_frequency(to_config(a), to_spec(a),
                                                      trials, a.seed);
        emit(a.out, lcsim::estimate_to_json(est, "nakamoto_frequency"));
    }
    return 0;
}

std::vector<double> parse_grid(const std::string& grid) {
    double start, step, stop;
    char c1, c2;
    std::istringstream is(grid);
    if (!(is >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
        step <= 0.0 || stop < start)
        throw lcsim::InvalidArgument("--grid expects start:step:stop");
    std::vector<double> v;
    for (long i = 0;; ++i) {
        const double x = start + step * static_cast<double>(i);
        if (x > stop + 1e-12) break;
        v.push_back(x);
    }
    return v;
}

int run_thresholds(const std::string& grid, const std::string& format,
                   const std::string& out) {
    const auto points = lcsim::comparison_curves(parse_grid(grid));
    if (format == "csv") {
        emit(out, lcsim::curves_to_csv(points));
        return 0;
    }
    json rows = json::array();
    for (const auto& p : points) {
        json row{{"lambda_delta", p.lambda_delta}, {"curve_id", p.curve_id}};
        if (p.present)
            row["beta"] = p.beta;
        else
            row["beta"] = nullptr;
        rows.push_back(std::move(row));
    }
    emit(out, rows.dump(2) + "\n");
    return 0;
}

int run_brw(double lambda_a, double t, long trials, int m, int first_passage_k,
            std::uint64_t seed, const std::string& out) {
    json j{{"lambda_a", lambda_a}, {"t", t}, {"trials", trials}, {"seed", seed}};
    double depth_sum = 0.0;
    long tail_hits = 0;
    for (long i = 0; i < trials; ++i) {
        auto s = lcsim::brw_simulate(lambda_a, t,
                                     lcsim::derive_seed(seed, static_cast<std::uint64_t>(i)));
        const int d = static_cast<int>(s.depth_at(t));
        depth_sum += d;
        if (m > 0 && d >= m) ++tail_hits;
    }
    j["mean_depth"] = depth_sum / static_cast<double>(trials);
    j["growth_ratio"] =
        depth_sum / static_cast<double>(trials) / (std::exp(1.0) * lambda_a * t);
    if (m > 0) {
        j["m"] = m;
        j["tail_empirical"] =
            static_cast<double>(tail_hits) / static_cast<double>(trials);
        j["tail_bound"] = lcsim::chia_tail_bound(lambda_a, t, m);
    }
    if (first_passage_k > 0) {
        double fp_sum = 0.0;
        for (long i = 0; i < trials; ++i)
            fp_sum += lcsim::brw_first_passage(
                lambda_a, first_passage_k,
                lcsim::derive_seed(seed ^ 0x5fb7u, static_cast<std::uint64_t>(i)));
        j["first_passage_k"] = first_passage_k;
        j["mean_first_passage"] = fp_sum / static_cast<double>(trials);
    }
    emit(out, j.dump(2) + "\n");
    return 0;
}

int run_dominance(int events, int k, int schedules, double adv_fraction,
                  std::uint64_t seed, bool liveness, long long budget,
                  const std::string& out) {
    auto report = lcsim::sz_dominance_check(events, k, schedules, adv_fraction,
                                            seed, liveness, budget);
    emit(out, lcsim::dominance_to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"longest-chain protocol simulator and attack analyzer"};
    app.require_subcommand(1);

    CommonArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "run one trace and analyze it");
    add_common_flags(sim, sim_args);

    CommonArgs rep_args;
    std::string rep_file;
    int rep_periods = 0;
    auto* rep = app.add_subcommand("replay", "run a trace from a schedule file");
    add_common_flags(rep, rep_args);
    auto* file_opt = rep->add_option("--file", rep_file, "schedule file ('-' = stdin)");
    auto* period_opt = rep->add_option(
        "--balance-periods", rep_periods,
        "use the canonical split-tip schedule with this many periods");
    file_opt->excludes(period_opt);

    CommonArgs atk_args;
    long atk_trials = 1000;
    auto* atk = app.add_subcommand("attack", "estimate attack success probability");
    add_common_flags(atk, atk_args);
    atk->add_option("--trials", atk_trials)->check(CLI::PositiveNumber);

    CommonArgs nak_args;
    long nak_trials = 100;
    double nak_window = 0.0;
    auto* nak = app.add_subcommand(
        "nakamoto", "Nakamoto-candidate frequency / window-gap estimates");
    add_common_flags(nak, nak_args);
    nak->add_option("--trials", nak_trials)->check(CLI::PositiveNumber);
    nak->add_option("--window", nak_window,
                    "estimate the no-candidate probability for windows of this length")
        ->check(CLI::NonNegativeNumber);

    std::string thr_grid = "0:0.05:2";
    std::string thr_format = "csv";
    std::string thr_out;
    auto* thr = app.add_subcommand("thresholds", "security threshold curves");
    thr->add_option("--grid", thr_grid, "lambda*delta grid start:step:stop");
    thr->add_option("--format", thr_format)->check(CLI::IsMember({"csv", "json"}));
    thr->add_option("--out", thr_out, "output path (default: stdout)");

    double brw_lambda_a = 1.0, brw_t = 4.0;
    long brw_trials = 1000;
    int brw_m = 0, brw_fp = 0;
    std::uint64_t brw_seed = 0;
    std::string brw_out;
    auto* brw = app.add_subcommand("brw", "adversary-tree growth and tail experiments");
    brw->add_option("--lambda-a", brw_lambda_a)->check(CLI::PositiveNumber);
    brw->add_option("--t", brw_t, "observation time")->check(CLI::PositiveNumber);
    brw->add_option("--trials", brw_trials)->check(CLI::PositiveNumber);
    brw->add_option("--m", brw_m, "tail depth to compare against the bound");
    brw->add_option("--first-passage", brw_fp, "depth for first-passage timing");
    brw->add_option("--seed", brw_seed);
    brw->add_option("--out", brw_out, "output path (default: stdout)");

    int dom_events = 6, dom_k = 2, dom_schedules = 100;
    double dom_frac = 0.5;
    std::uint64_t dom_seed = 0;
    bool dom_liveness = false;
    long long dom_budget = 50'000'000;
    auto* dom = app.add_subcommand(
        "dominance", "compare the pre-mining attack against exhaustive search");
    dom->add_option("--events", dom_events)->check(CLI::Range(1, 14));
    dom->add_option("--k", dom_k)->check(CLI::PositiveNumber);
    dom->add_option("--schedules", dom_schedules)->check(CLI::PositiveNumber);
    dom->add_option("--adv-fraction", dom_frac)->check(CLI::Range(0.0, 1.0));
    dom->add_option("--seed", dom_seed);
    dom->add_flag("--liveness", dom_liveness, "check the liveness variant");
    dom->add_option("--budget", dom_budget, "search node budget");
    std::string dom_out;
    dom->add_option("--out", dom_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_args);
        if (rep->parsed()) {
            if (rep_file.empty() && rep_periods == 0)
                throw lcsim::InvalidArgument(
                    "replay needs --file or --balance-periods");
            return run_replay(rep_args, rep_file, rep_periods);
        }
        if (atk->parsed()) return run_attack(atk_args, atk_trials);
        if (nak->parsed()) return run_nakamoto(nak_args, nak_trials, nak_window);
        if (thr->parsed()) return run_thresholds(thr_grid, thr_format, thr_out);
        if (brw->parsed())
            return run_brw(brw_lambda_a, brw_t, brw_trials, brw_m, brw_fp,
                           brw_seed, brw_out);
        if (dom->parsed())
            return run_dominance(dom_events, dom_k, dom_schedules, dom_frac,
                                 dom_seed, dom_liveness, dom_budget, dom_out);
    } catch (const lcsim::Error& e) {
        std::cerr << lcsim::error_to_json(e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cerr << lcsim::error_to_json("Error", e.what());
        return 1;
    }
    return 0;
}
