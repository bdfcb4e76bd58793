#pragma once

#include <iosfwd>
#include <string>

#include "lcsim/analysis.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/mining.hpp"
#include "lcsim/montecarlo.hpp"

namespace lcsim {

// Text schedule format, one event per line:
//   <time> <h|a> [node]
// Blank lines and `#` comments are skipped.  Times must be strictly
// increasing.  The optional node index pins an honest event to a miner.
struct ParsedSchedule {
    MiningSchedule schedule;
    std::vector<int> honest_nodes;  // one entry per honest event
    bool has_nodes = false;
};

ParsedSchedule parse_replay(std::istream& in);
ParsedSchedule parse_replay_string(const std::string& text);

// A canonical alternating schedule for split-tip replays: honest at t=1,2
// then adversary at t=3, repeating shifted by 3.
ParsedSchedule make_balance_replay(int periods);

std::string trace_to_json(const Trace& trace);
std::string report_to_json(const LedgerReport& report, const Trace& trace);
std::string estimate_to_json(const Estimate& estimate, const std::string& label);
std::string bn_decay_to_json(const BnDecay& decay);
std::string dominance_to_json(const DominanceReport& report);
std::string error_to_json(const std::string& kind, const std::string& message);

std::string format_double(double v);

}  // namespace lcsim
