// Command-line front end: cost evaluation, stability analysis, dynamics
// simulation, motif statistics and topology metrics over edge-list files.

#include "relnet/cost.hpp"
#include "relnet/dynamics.hpp"
#include "relnet/ingest.hpp"
#include "relnet/motifs.hpp"
#include "relnet/stability.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace relnet;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("RELNET_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 1;
}

Json load_params_json(const std::string& spec) {
    if (spec.empty())
        return Json::object();
    if (!spec.empty() && spec.front() == '{')
        return Json::parse(spec);
    std::ifstream in(spec);
    if (!in)
        throw InputError("cannot open params file " + spec);
    return Json::parse(in);
}

RunConfig config_from_flag(const std::string& params_spec) {
    Json doc = load_params_json(params_spec);
    if (!doc.contains("params") && !doc.empty())
        doc = Json{{"params", doc}}; // allow a bare params object
    return parse_run_config(doc);
}

struct NetworkArgs {
    std::string network_path;
    std::string majors_csv;
    std::string ranking_path;
    std::size_t top_k = 100;

    void attach(CLI::App* cmd) {
        cmd->add_option("--network", network_path, "edge-list file")->required();
        cmd->add_option("--majors", majors_csv,
                        "comma-separated original ids of major players");
        cmd->add_option("--ranking", ranking_path,
                        "ranking file, best id first");
        cmd->add_option("--top-k", top_k, "ranked ids treated as majors");
    }

    std::pair<Network, Snapshot> load() const {
        Snapshot snap = parse_edge_list(network_path);
        if (!ranking_path.empty()) {
            auto cls = classify_players(snap, ranking_path, top_k);
            return {std::move(cls.net), std::move(snap)};
        }
        std::set<std::string> majors;
        std::stringstream ss(majors_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty())
                majors.insert(tok);
        Network net;
        for (auto i : snap.network.node_ids())
            net.add_node(i, majors.count(snap.original_ids.at(i))
                                ? PlayerType::MajorA
                                : PlayerType::MinorB);
        for (const auto& [u, v] : snap.network.edges())
            net.add_edge(u, v);
        return {std::move(net), std::move(snap)};
    }
};

void emit(const Json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw InputError("cannot write " + out_path);
        out << doc.dump(2) << "\n";
    }
}

std::vector<std::string> snapshot_files(const std::string& path) {
    if (!fs::is_directory(path))
        return {path};
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file())
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw InputError(path + ": empty snapshot directory");
    return files;
}

std::set<NodeId> majors_of(const Network& g) {
    std::set<NodeId> out;
    for (auto i : g.node_ids())
        if (g.type_of(i) == PlayerType::MajorA)
            out.insert(i);
    return out;
}

std::set<NodeId> minors_of(const Network& g) {
    std::set<NodeId> out;
    for (auto i : g.node_ids())
        if (g.type_of(i) == PlayerType::MinorB)
            out.insert(i);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"reliability-constrained network formation analysis"};
    app.require_subcommand(1);

    std::string params_spec, out_path;
    app.add_option("--params", params_spec,
                   "game parameters: inline JSON or a file path")
        ->envname("RELNET_PARAMS");
    app.add_option("--out", out_path, "write the JSON report here");
    std::uint64_t seed = default_seed();
    app.add_option("--seed", seed, "random seed (env RELNET_SEED)");

    // ---- cost ----
    auto* cost_cmd = app.add_subcommand("cost", "node and social costs");
    NetworkArgs cost_net;
    cost_net.attach(cost_cmd);
    bool cost_bare = false;
    cost_cmd->add_flag("--bare", cost_bare, "single-path cost model");

    // ---- stable ----
    auto* stable_cmd = app.add_subcommand("stable", "stability analysis");
    stable_cmd->require_subcommand(1);
    auto* stable_check = stable_cmd->add_subcommand("check", "pairwise stability");
    NetworkArgs stable_net;
    stable_net.attach(stable_check);
    auto* stable_enum =
        stable_cmd->add_subcommand("enumerate", "all stable small networks");
    std::size_t na = 2, nb = 3;
    bool enum_bare = false;
    stable_enum->add_option("--na", na, "major player count")->required();
    stable_enum->add_option("--nb", nb, "minor player count")->required();
    stable_enum->add_flag("--bare", enum_bare);
    auto* stable_prices =
        stable_cmd->add_subcommand("prices", "PoS / PoA / PoR metrics");
    stable_prices->add_option("--na", na)->required();
    stable_prices->add_option("--nb", nb)->required();

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "turn-based dynamics");
    std::string logs_path;
    sim_cmd->add_option("--logs", logs_path, "write per-turn JSON lines here");

    // ---- motifs ----
    auto* motifs_cmd = app.add_subcommand("motifs", "motif statistics");
    motifs_cmd->require_subcommand(1);
    auto* motifs_count = motifs_cmd->add_subcommand("count", "raw counts");
    NetworkArgs motif_net;
    motif_net.attach(motifs_count);
    int ds_m = 10, ec_l = 3;
    motifs_count->add_option("--m", ds_m, "double-star shared-neighbor bound");
    motifs_count->add_option("--l", ec_l, "entangled-cycle length (3 or 4)");
    auto* motifs_null = motifs_cmd->add_subcommand("null", "significance report");
    NetworkArgs null_net;
    null_net.attach(motifs_null);
    int samples = 100;
    motifs_null->add_option("--samples", samples, "configuration-model draws");
    std::string motif_kind = "double_star";
    motifs_null->add_option("--motif", motif_kind, "double_star | entangled");
    motifs_null->add_option("--m", ds_m);
    motifs_null->add_option("--l", ec_l);

    // ---- topology ----
    auto* topo_cmd = app.add_subcommand("topology", "snapshot metrics");
    topo_cmd->require_subcommand(1);
    auto* topo_cycles = topo_cmd->add_subcommand(
        "cycles", "mean major-minor shortest cycle length");
    NetworkArgs cycles_net;
    cycles_net.attach(topo_cycles);
    long long cycle_samples = 0;
    topo_cycles->add_option("--samples", cycle_samples,
                            "pair sample count (0: all pairs)");
    auto* topo_ratio =
        topo_cmd->add_subcommand("core-ratio", "disjoint-paths-to-core ratio");
    NetworkArgs ratio_net;
    ratio_net.attach(topo_ratio);
    std::string mode_str = "node";
    topo_ratio->add_option("--mode", mode_str, "node | link");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    RunConfig cfg = config_from_flag(params_spec);
    const GameParams& P = cfg.params;

    if (*cost_cmd) {
        auto [net, snap] = cost_net.load();
        Json nodes = Json::array();
        for (auto i : net.node_ids()) {
            Json n;
            n["id"] = i;
            n["original"] = snap.original_ids.at(i);
            n["cost"] = ext_cost_to_json(cost_bare ? bare_node_cost(net, P, i)
                                                   : node_cost(net, P, i));
            nodes.push_back(n);
        }
        Json results;
        results["nodes"] = nodes;
        results["social"] = ext_cost_to_json(social_cost(net, P, cost_bare));
        emit(make_report("cost", run_config_to_json(cfg), results), out_path);
        return 0;
    }

    if (*stable_check) {
        auto [net, snap] = stable_net.load();
        auto rep = is_pairwise_stable(net, P);
        Json viol = Json::array();
        for (const auto& v : rep.violations)
            viol.push_back(
                {{"kind", v.kind == Violation::Kind::BeneficialRemoval
                              ? "beneficial_removal"
                              : "beneficial_addition"},
                 {"edge", {v.edge.first, v.edge.second}},
                 {"delta_i", ext_cost_to_json(v.delta_i)},
                 {"delta_j", ext_cost_to_json(v.delta_j)}});
        Json results = {{"stable", rep.stable},
                        {"violations", viol},
                        {"small_model_warning", rep.small_model_warning}};
        emit(make_report("stable.check", run_config_to_json(cfg), results),
             out_path);
        return 0;
    }

    if (*stable_enum) {
        auto found = enumerate_stable(P, na, nb, enum_bare, cfg.enumeration_budget);
        Json list = Json::array();
        for (const auto& s : found)
            list.push_back({{"network", network_to_json(s.net)},
                            {"social", ext_cost_to_json(s.social)}});
        Json results = {{"count", found.size()}, {"stable_networks", list}};
        emit(make_report("stable.enumerate", run_config_to_json(cfg), results),
             out_path);
        return 0;
    }

    if (*stable_prices) {
        auto m = price_metrics(P, na, nb, cfg.enumeration_budget);
        Json results;
        results["optimal_social"] = ext_cost_to_json(m.optimal_social);
        results["stable_set_empty"] = m.stable_set_empty;
        results["small_model_warning"] = m.small_model_warning;
        if (m.best_stable_social)
            results["best_stable_social"] = ext_cost_to_json(*m.best_stable_social);
        if (m.worst_stable_social)
            results["worst_stable_social"] =
                ext_cost_to_json(*m.worst_stable_social);
        results["pos"] = ext_ratio_to_json(m.pos);
        results["poa"] = ext_ratio_to_json(m.poa);
        if (m.por)
            results["por"] = ext_ratio_to_json(*m.por);
        if (m.optimal_witness)
            results["optimal_network"] = network_to_json(*m.optimal_witness);
        if (m.best_stable_witness)
            results["best_stable_network"] =
                network_to_json(*m.best_stable_witness);
        if (m.worst_stable_witness)
            results["worst_stable_network"] =
                network_to_json(*m.worst_stable_witness);
        emit(make_report("stable.prices", run_config_to_json(cfg), results),
             out_path);
        return 0;
    }

    if (*sim_cmd) {
        if (!cfg.schedule)
            throw InputError("simulate requires a schedule in --params");
        DynamicRule rule = cfg.rule.value_or(DynamicRule{});
        auto seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{seed}
                                       : cfg.seeds;
        Json runs = Json::array();
        std::ofstream logs;
        if (!logs_path.empty()) {
            logs.open(logs_path);
            if (!logs)
                throw InputError("cannot write " + logs_path);
        }
        for (auto s : seeds) {
            auto res = simulate(P, *cfg.schedule, rule, cfg.max_rounds, s);
            if (logs.is_open())
                for (const auto& t : res.log)
                    logs << turn_log_to_json(t).dump() << "\n";
            auto cls = classify_structure(res.net, P);
            const char* cls_name = nullptr;
            switch (cls.kind) {
            case StructureClass::Kind::OptimalStable:
                cls_name = "optimal_stable";
                break;
            case StructureClass::Kind::DoubleStar:
                cls_name = "double_star";
                break;
            case StructureClass::Kind::SingleStarUnreliable:
                cls_name = "single_star_unreliable";
                break;
            default:
                cls_name = "other";
            }
            runs.push_back({{"seed", s},
                            {"converged", res.converged},
                            {"turns", res.log.size()},
                            {"structure", cls_name},
                            {"social", ext_cost_to_json(social_cost(res.net, P))},
                            {"final_network", network_to_json(res.net)}});
        }
        emit(make_report("simulate", run_config_to_json(cfg), {{"runs", runs}}),
             out_path);
        return 0;
    }

    if (*motifs_count) {
        auto [net, snap] = motif_net.load();
        Json results;
        results["double_star"] = {{"m", ds_m},
                                  {"count", double_star_count(net, ds_m)}};
        results["entangled_cycle"] = {{"l", ec_l},
                                      {"count", entangled_cycle_count(net, ec_l)}};
        emit(make_report("motifs.count", run_config_to_json(cfg), results),
             out_path);
        return 0;
    }

    if (*motifs_null) {
        auto [net, snap] = null_net.load();
        MotifKind kind = motif_kind == "entangled"
                             ? MotifKind::entangled_cycle(ec_l)
                             : MotifKind::double_star(ds_m);
        auto rep = null_model_stats(net, kind, samples, seed);
        Json results;
        results["motif"] = motif_kind;
        results["observed"] = rep.observed;
        results["null_mean"] = to_string(rep.null_mean);
        results["null_var"] = to_string(rep.null_var);
        results["null_std"] = rep.null_std;
        results["samples"] = rep.samples;
        if (rep.p_bound)
            results["p_bound"] = to_string(*rep.p_bound);
        emit(make_report("motifs.null", run_config_to_json(cfg), results),
             out_path);
        return 0;
    }

    if (*topo_cycles) {
        Json series = Json::array();
        for (const auto& file : snapshot_files(cycles_net.network_path)) {
            NetworkArgs one = cycles_net;
            one.network_path = file;
            auto [net, snap] = one.load();
            auto stats = mean_major_minor_cycle(
                net, majors_of(net), minors_of(net),
                cycle_samples > 0 ? std::optional<long long>(cycle_samples)
                                  : std::nullopt,
                seed);
            series.push_back({{"snapshot", snap.label},
                              {"mean_cycle", to_string(stats.mean)},
                              {"mean_cycle_decimal", to_decimal_string(stats.mean)},
                              {"excluded_fraction",
                               to_string(stats.excluded_fraction)},
                              {"pairs_used", stats.pairs_used}});
        }
        emit(make_report("topology.cycles", run_config_to_json(cfg),
                         {{"series", series}}),
             out_path);
        return 0;
    }

    if (*topo_ratio) {
        auto mode = mode_str == "link" ? DisjointnessMode::LinkDisjoint
                                       : DisjointnessMode::NodeDisjoint;
        Json series = Json::array();
        for (const auto& file : snapshot_files(ratio_net.network_path)) {
            NetworkArgs one = ratio_net;
            one.network_path = file;
            auto [net, snap] = one.load();
            auto core = majors_of(net);
            auto ratio = core_disjoint_ratio(net, core, mode);
            series.push_back({{"snapshot", snap.label},
                              {"core_ratio", to_string(ratio)},
                              {"core_ratio_decimal", to_decimal_string(ratio)}});
        }
        emit(make_report("topology.core-ratio", run_config_to_json(cfg),
                         {{"series", series}}),
             out_path);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
