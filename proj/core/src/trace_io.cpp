#include "lcsim/trace_io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "lcsim/errors.hpp"

namespace lcsim {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ParsedSchedule parse_replay(std::istream& in) {
    ParsedSchedule out;
    std::string line;
    std::size_t line_no = 0;
    double last = 0.0;
    bool any = false;
    bool any_node = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        double t;
        if (!(ls >> t)) {
            std::string rest;
            if (ls.clear(), ls >> rest)
                throw MalformedSchedule("line " + std::to_string(line_no) +
                                        ": expected a time");
            continue;  // blank / comment-only line
        }
        std::string cls;
        if (!(ls >> cls) || (cls != "h" && cls != "a"))
            throw MalformedSchedule("line " + std::to_string(line_no) +
                                    ": expected class h or a");
        if (any && t <= last)
            throw MalformedSchedule("line " + std::to_string(line_no) +
                                    ": times must be strictly increasing");
        if (t <= 0.0)
            throw MalformedSchedule("line " + std::to_string(line_no) +
                                    ": times must be positive");
        long node = -1;
        if (ls >> node) {
            if (cls != "h")
                throw MalformedSchedule("line " + std::to_string(line_no) +
                                        ": node index on a non-honest event");
            if (node < 0)
                throw MalformedSchedule("line " + std::to_string(line_no) +
                                        ": negative node index");
            any_node = true;
        }
        std::string extra;
        if (ls >> extra)
            throw MalformedSchedule("line " + std::to_string(line_no) +
                                    ": trailing tokens");
        out.schedule.events.push_back({t, cls == "a"});
        if (cls == "h") out.honest_nodes.push_back(static_cast<int>(node));
        last = t;
        any = true;
    }
    if (!any) throw MalformedSchedule("empty schedule");
    if (any_node) {
        out.has_nodes = true;
        for (int n : out.honest_nodes)
            if (n < 0)
                throw MalformedSchedule(
                    "node indices must be given on all honest events or none");
    } else {
        out.honest_nodes.clear();
    }
    out.schedule.horizon = last + 1.0;
    return out;
}

ParsedSchedule parse_replay_string(const std::string& text) {
    std::istringstream in(text);
    return parse_replay(in);
}

ParsedSchedule make_balance_replay(int periods) {
    if (periods < 1) throw InvalidArgument("make_balance_replay: periods >= 1");
    ParsedSchedule out;
    out.has_nodes = true;
    for (int p = 0; p < periods; ++p) {
        const double base = 3.0 * p;
        out.schedule.events.push_back({base + 1.0, true});
        out.schedule.events.push_back({base + 2.0, false});
        out.honest_nodes.push_back(0);
        out.schedule.events.push_back({base + 3.0, false});
        out.honest_nodes.push_back(1);
    }
    // Trailing adversary event so the schedule ends with both forks tied;
    // without it the last honest block pulls one fork ahead at the horizon.
    out.schedule.events.push_back({3.0 * periods + 1.0, true});
    out.schedule.horizon = 3.0 * periods + 2.0;
    return out;
}

namespace {

json config_json(const SimulationConfig& c) {
    return json{{"lambda_h", c.lambda_h}, {"lambda_a", c.lambda_a},
                {"delta", c.delta},       {"model", model_name(c.model)},
                {"n_nodes", c.n_nodes},   {"horizon", c.horizon},
                {"seed", c.seed},         {"confirm_depth", c.confirm_depth}};
}

}  // namespace

std::string trace_to_json(const Trace& trace) {
    json j;
    j["config"] = config_json(trace.config);
    json blocks = json::array();
    for (BlockId b = 0; b < trace.tree.size(); ++b) {
        const Block& blk = trace.tree.block(b);
        json row{{"id", blk.id},
                 {"parent", blk.parent},
                 {"honest", blk.honest()},
                 {"mined_at", blk.mined_at},
                 {"depth", blk.depth}};
        if (trace.published(b))
            row["published_at"] = trace.published_at[b];
        else
            row["published_at"] = nullptr;
        blocks.push_back(std::move(row));
    }
    j["blocks"] = std::move(blocks);
    json views = json::array();
    for (const auto& v : trace.view_log)
        views.push_back(json{{"time", v.time},
                             {"node", v.node},
                             {"tip", v.tip},
                             {"length", v.length}});
    j["view_log"] = std::move(views);
    j["final_tips"] = trace.final_tips;
    j["honest_index"] = trace.honest_index;
    return j.dump(2) + "\n";
}

std::string report_to_json(const LedgerReport& report, const Trace& trace) {
    json j;
    j["nakamoto_candidates"] = report.nakamoto_candidates;
    j["loners"] = report.loners;
    json catch_ups = json::array();
    for (const auto& [i, k] : report.catch_ups)
        catch_ups.push_back(json{{"tree", i}, {"honest", k}});
    j["catch_ups"] = std::move(catch_ups);
    json pers = json::array();
    for (const auto& v : report.persistence_violations)
        pers.push_back(json{{"block", v.block}, {"time", v.time}, {"depth", v.depth}});
    j["persistence_violations"] = std::move(pers);
    json live = json::array();
    for (const auto& v : report.liveness_violations)
        live.push_back(json{{"t0", v.t0}, {"window", v.window}});
    j["liveness_violations"] = std::move(live);
    j["honest_blocks"] = trace.honest_blocks();
    j["total_blocks"] = trace.tree.size() - 1;
    return j.dump(2) + "\n";
}

std::string estimate_to_json(const Estimate& estimate, const std::string& label) {
    json j{{"label", label},
           {"mean", estimate.mean},
           {"std_error", estimate.std_error},
           {"ci95", json{{"lo", estimate.ci_lo}, {"hi", estimate.ci_hi}}},
           {"trials", estimate.trials},
           {"failed_trials", estimate.failed_trials}};
    return j.dump(2) + "\n";
}

std::string bn_decay_to_json(const BnDecay& decay) {
    json j{{"n_grid", decay.n_grid},
           {"p", decay.p},
           {"fitted_rate", decay.fitted_rate},
           {"trials", decay.trials}};
    return j.dump(2) + "\n";
}

std::string dominance_to_json(const DominanceReport& report) {
    json j{{"schedules", report.schedules},
           {"skipped", report.skipped},
           {"sz_successes", report.sz_successes},
           {"searched", report.searched},
           {"search_successes", report.search_successes},
           {"search_nodes", report.search_nodes},
           {"counterexamples", report.counterexamples}};
    return j.dump(2) + "\n";
}

std::string error_to_json(const std::string& kind, const std::string& message) {
    json j{{"error", json{{"kind", kind}, {"message", message}}}};
    return j.dump(2) + "\n";
}

}  // namespace lcsim
