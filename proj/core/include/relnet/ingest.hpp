#pragma once

#include "relnet/dynamics.hpp"
#include "relnet/ext_cost.hpp"
#include "relnet/network.hpp"
#include "relnet/params.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace relnet {

using Json = nlohmann::json;

/// One topology snapshot: nodes remapped to contiguous ids, original
/// labels kept for output.
struct Snapshot {
    std::string label;
    std::string source_path;
    Network network; // all nodes MinorB until classify_players runs
    std::map<NodeId, std::string> original_ids;
    long self_loops_dropped = 0;
    long duplicates_dropped = 0;
};

/// Reads "u v" or "u|v|rel" lines; '#' starts a comment; self-loops are
/// dropped (counted), duplicate edges collapsed (counted).
Snapshot parse_edge_list(const std::string& path);

struct ClassifiedNetwork {
    Network net;
    long ranked_missing = 0;   // ranked ids absent from the snapshot
    bool ranking_short = false; // top_k exceeded the ranking length
};

/// Top-ranked ids present in the snapshot become majors; everyone else is
/// a minor. Ranking file: one id per line, best first.
ClassifiedNetwork classify_players(const Snapshot& s, const std::string& ranking_path,
                                   std::size_t top_k);

struct RunConfig {
    GameParams params = GameParams::make(2, 1, 1);
    std::optional<Schedule> schedule;
    std::optional<DynamicRule> rule;
    std::vector<std::uint64_t> seeds;
    std::size_t enumeration_budget = 7;
    long max_rounds = 50;
};

/// Strict JSON round-trip: unknown keys are rejected.
RunConfig parse_run_config(const Json& doc);
Json run_config_to_json(const RunConfig& cfg);

Json network_to_json(const Network& g,
                     const std::map<NodeId, std::string>* original = nullptr);
Json ext_cost_to_json(const ExtCost& c);
Json ext_ratio_to_json(const ExtRatio& r);
Json turn_log_to_json(const TurnLog& t);

/// Canonical report envelope all commands share.
Json make_report(const std::string& command, const Json& config,
                 const Json& results);

} // namespace relnet
