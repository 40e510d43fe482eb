#include "relnet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace relnet {

namespace {

std::uint64_t parse_id(const std::string& tok, const std::string& path, long line) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(line) +
                         ": malformed node id '" + tok + "'");
    }
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Snapshot parse_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    Snapshot snap;
    snap.source_path = path;
    snap.label = path;
    if (auto slash = path.find_last_of('/'); slash != std::string::npos)
        snap.label = path.substr(slash + 1);
    if (auto dot = snap.label.find_last_of('.'); dot != std::string::npos)
        snap.label = snap.label.substr(0, dot);

    std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::vector<std::string> toks;
        if (line.find('|') != std::string::npos) {
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, '|'))
                toks.push_back(trim(tok));
        } else {
            std::stringstream ss(line);
            std::string tok;
            while (ss >> tok)
                toks.push_back(tok);
        }
        if (toks.size() < 2)
            throw InputError(path + ":" + std::to_string(lineno) +
                             ": expected two node ids");
        auto u = parse_id(toks[0], path, lineno);
        auto v = parse_id(toks[1], path, lineno);
        if (u == v) {
            ++snap.self_loops_dropped;
            continue;
        }
        if (!edges.insert({std::min(u, v), std::max(u, v)}).second)
            ++snap.duplicates_dropped;
    }
    if (edges.empty())
        throw InputError(path + ": no edges found");

    std::set<std::uint64_t> originals;
    for (const auto& [u, v] : edges) {
        originals.insert(u);
        originals.insert(v);
    }
    std::map<std::uint64_t, NodeId> remap;
    NodeId next = 0;
    for (auto o : originals) {
        snap.network.add_node(next, PlayerType::MinorB);
        snap.original_ids[next] = std::to_string(o);
        remap[o] = next++;
    }
    for (const auto& [u, v] : edges)
        snap.network.add_edge(remap[u], remap[v]);
    return snap;
}

ClassifiedNetwork classify_players(const Snapshot& s, const std::string& ranking_path,
                                   std::size_t top_k) {
    if (top_k < 1)
        throw InputError("top_k must be at least 1");
    std::ifstream in(ranking_path);
    if (!in)
        throw InputError("cannot open " + ranking_path);
    std::vector<std::uint64_t> ranking;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        ranking.push_back(parse_id(line, ranking_path, lineno));
    }
    if (ranking.empty())
        throw InputError(ranking_path + ": empty ranking");

    std::map<std::string, NodeId> by_original;
    for (const auto& [id, orig] : s.original_ids)
        by_original[orig] = id;

    ClassifiedNetwork out;
    out.ranking_short = top_k > ranking.size();
    std::set<NodeId> majors;
    for (std::size_t k = 0; k < std::min(top_k, ranking.size()); ++k) {
        auto it = by_original.find(std::to_string(ranking[k]));
        if (it == by_original.end())
            ++out.ranked_missing;
        else
            majors.insert(it->second);
    }
    if (majors.empty())
        throw InputError("no ranked id is present in the snapshot "
                         "(id-space mismatch?)");
    for (auto i : s.network.node_ids())
        out.net.add_node(i, majors.count(i) ? PlayerType::MajorA
                                            : PlayerType::MinorB);
    for (const auto& [u, v] : s.network.edges())
        out.net.add_edge(u, v);
    return out;
}

namespace {

void reject_unknown(const Json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return it.key() == k;
            }) == known.end())
            throw InputError("unknown key '" + it.key() + "' in " + where);
}

Rational json_rational(const Json& v, const std::string& where) {
    if (v.is_number_integer())
        return Rational(v.get<long long>());
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    throw InputError(where + ": rationals must be integers or strings like "
                             "\"3/2\" or \"1.5\"");
}

} // namespace

RunConfig parse_run_config(const Json& doc) {
    if (!doc.is_object())
        throw InputError("config must be a JSON object");
    reject_unknown(doc, {"params", "schedule", "rule", "seeds",
                         "enumeration_budget", "max_rounds"},
                   "config");
    RunConfig cfg;

    if (doc.contains("params")) {
        const auto& pj = doc["params"];
        reject_unknown(pj, {"a", "c_a", "c_b", "delta", "tau", "mode",
                            "objective", "transfers"},
                       "params");
        Rational a = pj.contains("a") ? json_rational(pj["a"], "params.a") : Rational(2);
        Rational ca = pj.contains("c_a") ? json_rational(pj["c_a"], "params.c_a") : Rational(1);
        Rational cb = pj.contains("c_b") ? json_rational(pj["c_b"], "params.c_b") : ca;
        Rational delta = pj.contains("delta") ? json_rational(pj["delta"], "params.delta") : Rational(1);
        int tau = pj.value("tau", 1);
        DisjointnessMode mode = DisjointnessMode::NodeDisjoint;
        if (pj.contains("mode")) {
            auto m = pj["mode"].get<std::string>();
            if (m == "node")
                mode = DisjointnessMode::NodeDisjoint;
            else if (m == "link")
                mode = DisjointnessMode::LinkDisjoint;
            else
                throw InputError("params.mode must be 'node' or 'link'");
        }
        PairObjective obj = PairObjective::min_sum();
        if (pj.contains("objective")) {
            const auto& oj = pj["objective"];
            reject_unknown(oj, {"kind", "delta", "node_budget"}, "objective");
            auto kind = oj.value("kind", std::string("min_sum"));
            if (kind == "min_sum")
                obj = PairObjective::min_sum();
            else if (kind == "min_primary_heuristic")
                obj = PairObjective::min_primary_heuristic();
            else if (kind == "min_cost_exact")
                obj = PairObjective::min_cost_exact(
                    oj.contains("delta") ? json_rational(oj["delta"], "objective.delta")
                                         : delta,
                    oj.value("node_budget", std::size_t{12}));
            else
                throw InputError("unknown objective kind '" + kind + "'");
        }
        bool transfers = pj.value("transfers", false);
        cfg.params = GameParams::make(a, ca, cb, delta, tau, mode, obj, transfers);
    }

    if (doc.contains("schedule")) {
        const auto& sj = doc["schedule"];
        reject_unknown(sj, {"policy", "order", "arrivals"}, "schedule");
        Schedule s;
        auto policy = sj.value("policy", std::string("round_robin"));
        if (policy == "round_robin")
            s.policy = Schedule::OrderPolicy::RoundRobin;
        else if (policy == "uniform_random")
            s.policy = Schedule::OrderPolicy::UniformRandom;
        else if (policy == "explicit")
            s.policy = Schedule::OrderPolicy::Explicit;
        else
            throw InputError("unknown schedule policy '" + policy + "'");
        if (sj.contains("order"))
            for (const auto& v : sj["order"])
                s.explicit_order.push_back(v.get<NodeId>());
        if (sj.contains("arrivals"))
            for (const auto& aj : sj["arrivals"]) {
                reject_unknown(aj, {"turn", "id", "type"}, "arrival");
                auto type = aj.value("type", std::string("minor"));
                if (type != "major" && type != "minor")
                    throw InputError("arrival type must be 'major' or 'minor'");
                s.arrivals.push_back({aj.value("turn", 0L), aj.at("id").get<NodeId>(),
                                      type == "major" ? PlayerType::MajorA
                                                      : PlayerType::MinorB});
            }
        cfg.schedule = std::move(s);
    }

    if (doc.contains("rule")) {
        const auto& rj = doc["rule"];
        reject_unknown(rj, {"kind", "plan_depth"}, "rule");
        DynamicRule r;
        auto kind = rj.value("kind", std::string("rule2a"));
        if (kind == "rule2a")
            r.kind = DynamicRule::Kind::Rule2a;
        else if (kind == "rule2b")
            r.kind = DynamicRule::Kind::Rule2b;
        else
            throw InputError("rule kind must be 'rule2a' or 'rule2b'");
        r.plan_depth = rj.value("plan_depth", 3);
        if (r.plan_depth < 1)
            throw InputError("plan_depth must be positive");
        cfg.rule = r;
    }

    if (doc.contains("seeds"))
        for (const auto& v : doc["seeds"])
            cfg.seeds.push_back(v.get<std::uint64_t>());
    cfg.enumeration_budget = doc.value("enumeration_budget", std::size_t{7});
    cfg.max_rounds = doc.value("max_rounds", 50L);
    return cfg;
}

Json run_config_to_json(const RunConfig& cfg) {
    Json pj;
    pj["a"] = to_string(cfg.params.a);
    pj["c_a"] = to_string(cfg.params.c_a);
    pj["c_b"] = to_string(cfg.params.c_b);
    pj["delta"] = to_string(cfg.params.delta);
    pj["tau"] = cfg.params.tau;
    pj["mode"] =
        cfg.params.mode == DisjointnessMode::NodeDisjoint ? "node" : "link";
    Json oj;
    switch (cfg.params.objective.kind) {
    case PairObjective::Kind::MinSum:
        oj["kind"] = "min_sum";
        break;
    case PairObjective::Kind::MinPrimaryHeuristic:
        oj["kind"] = "min_primary_heuristic";
        break;
    case PairObjective::Kind::MinCostExact:
        oj["kind"] = "min_cost_exact";
        oj["delta"] = to_string(cfg.params.objective.delta);
        oj["node_budget"] = cfg.params.objective.exact_node_budget;
        break;
    }
    pj["objective"] = oj;
    pj["transfers"] = cfg.params.transfers_enabled;

    Json doc;
    doc["params"] = pj;
    if (cfg.schedule) {
        Json sj;
        switch (cfg.schedule->policy) {
        case Schedule::OrderPolicy::RoundRobin:
            sj["policy"] = "round_robin";
            break;
        case Schedule::OrderPolicy::UniformRandom:
            sj["policy"] = "uniform_random";
            break;
        case Schedule::OrderPolicy::Explicit:
            sj["policy"] = "explicit";
            break;
        }
        if (!cfg.schedule->explicit_order.empty())
            sj["order"] = cfg.schedule->explicit_order;
        Json arr = Json::array();
        for (const auto& a : cfg.schedule->arrivals)
            arr.push_back({{"turn", a.turn},
                           {"id", a.id},
                           {"type", a.type == PlayerType::MajorA ? "major" : "minor"}});
        sj["arrivals"] = arr;
        doc["schedule"] = sj;
    }
    if (cfg.rule) {
        doc["rule"] = {{"kind", cfg.rule->kind == DynamicRule::Kind::Rule2a
                                    ? "rule2a"
                                    : "rule2b"},
                       {"plan_depth", cfg.rule->plan_depth}};
    }
    doc["seeds"] = cfg.seeds;
    doc["enumeration_budget"] = cfg.enumeration_budget;
    doc["max_rounds"] = cfg.max_rounds;
    return doc;
}

Json network_to_json(const Network& g,
                     const std::map<NodeId, std::string>* original) {
    Json nodes = Json::array();
    for (auto i : g.node_ids()) {
        Json n;
        n["id"] = i;
        n["type"] = g.type_of(i) == PlayerType::MajorA ? "major" : "minor";
        if (original) {
            auto it = original->find(i);
            if (it != original->end())
                n["original"] = it->second;
        }
        nodes.push_back(n);
    }
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"nodes", nodes}, {"edges", edges}};
}

Json ext_cost_to_json(const ExtCost& c) {
    return {{"q", c.q}, {"finite", to_string(c.finite)},
            {"finite_decimal", to_decimal_string(c.finite)}};
}

Json ext_ratio_to_json(const ExtRatio& r) {
    switch (r.kind) {
    case ExtRatio::Kind::Finite:
        return {{"kind", "finite"}, {"value", to_string(r.value)},
                {"value_decimal", to_decimal_string(r.value)}};
    case ExtRatio::Kind::Infinite:
        return {{"kind", "infinite"}};
    default:
        return {{"kind", "indeterminate"}};
    }
}

Json turn_log_to_json(const TurnLog& t) {
    Json moves = Json::array();
    for (const auto& m : t.moves) {
        Json mj;
        mj["op"] = m.change == LinkChange::Add ? "add" : "remove";
        mj["edge"] = {m.edge.first, m.edge.second};
        if (m.price != 0)
            mj["price"] = to_string(m.price);
        mj["actor_delta"] = ext_cost_to_json(m.actor_delta);
        moves.push_back(mj);
    }
    return {{"turn", t.turn},
            {"actor", t.actor},
            {"moves", moves},
            {"network_hash", t.network_hash}};
}

Json make_report(const std::string& command, const Json& config,
                 const Json& results) {
    Json meta;
    meta["tool"] = "relnet";
    meta["version"] = "0.1.0";
    meta["command"] = command;
    return {{"meta", meta}, {"config", config}, {"results", results}};
}

} // namespace relnet
