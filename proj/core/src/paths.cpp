#include "relnet/paths.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace relnet {

namespace {

constexpr int kUnreached = -1;

std::vector<int> bfs_dist(const Network& g, std::uint32_t src,
                          const std::vector<bool>* blocked = nullptr,
                          const std::set<std::pair<std::uint32_t, std::uint32_t>>*
                              blocked_edges = nullptr) {
    std::vector<int> dist(g.node_count(), kUnreached);
    if (blocked && (*blocked)[src])
        return dist;
    std::deque<std::uint32_t> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (auto v : g.neighbors_at(u)) {
            if (dist[v] != kUnreached)
                continue;
            if (blocked && (*blocked)[v])
                continue;
            if (blocked_edges &&
                blocked_edges->count({std::min(u, v), std::max(u, v)}))
                continue;
            dist[v] = dist[u] + 1;
            q.push_back(v);
        }
    }
    return dist;
}

// Minimal unit-capacity min-cost flow, small enough to rebuild per query.
struct FlowGraph {
    struct Arc {
        std::uint32_t to;
        int cap;
        int cost;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<std::uint32_t>> head;

    explicit FlowGraph(std::size_t n) : head(n) {}

    void add(std::uint32_t u, std::uint32_t v, int cap, int cost) {
        head[u].push_back(static_cast<std::uint32_t>(arcs.size()));
        arcs.push_back({v, cap, cost});
        head[v].push_back(static_cast<std::uint32_t>(arcs.size()));
        arcs.push_back({u, 0, -cost});
    }

    // One unit along a cheapest augmenting path (SPFA). Returns path cost,
    // or -1 when the sink is unreachable.
    int augment_cheapest(std::uint32_t s, std::uint32_t t) {
        const int inf = std::numeric_limits<int>::max();
        std::vector<int> dist(head.size(), inf);
        std::vector<int> via(head.size(), -1);
        std::vector<bool> inq(head.size(), false);
        std::deque<std::uint32_t> q{s};
        dist[s] = 0;
        inq[s] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            inq[u] = false;
            for (auto ai : head[u]) {
                const auto& a = arcs[ai];
                if (a.cap <= 0 || dist[u] + a.cost >= dist[a.to])
                    continue;
                dist[a.to] = dist[u] + a.cost;
                via[a.to] = static_cast<int>(ai);
                if (!inq[a.to]) {
                    inq[a.to] = true;
                    q.push_back(a.to);
                }
            }
        }
        if (dist[t] == inf)
            return -1;
        for (std::uint32_t v = t; v != s;) {
            auto ai = static_cast<std::uint32_t>(via[v]);
            arcs[ai].cap -= 1;
            arcs[ai ^ 1].cap += 1;
            v = arcs[ai ^ 1].to;
        }
        return dist[t];
    }

    // Net forward flow currently on arc ai (forward arcs sit at even slots).
    int flow_on(std::uint32_t ai) const { return arcs[ai ^ 1].cap; }
};

struct PairSearchResult {
    bool connected = false;
    bool pair_found = false;
    std::vector<std::uint32_t> first;  // node indices incl. endpoints
    std::vector<std::uint32_t> second;
};

// Shortest-total pair of disjoint paths via two cheapest augmentations.
PairSearchResult min_sum_pair(const Network& g, std::uint32_t s, std::uint32_t t,
                              DisjointnessMode mode) {
    PairSearchResult out;
    const auto n = static_cast<std::uint32_t>(g.node_count());
    const bool split = mode == DisjointnessMode::NodeDisjoint;
    const std::uint32_t vn = split ? 2 * n : n;
    FlowGraph fg(vn);
    auto in_of = [&](std::uint32_t v) { return split ? 2 * v : v; };
    auto out_of = [&](std::uint32_t v) { return split ? 2 * v + 1 : v; };
    if (split)
        for (std::uint32_t v = 0; v < n; ++v)
            fg.add(2 * v, 2 * v + 1, (v == s || v == t) ? 2 : 1, 0);
    std::vector<std::uint32_t> edge_arcs;
    for (std::uint32_t u = 0; u < n; ++u)
        for (auto v : g.neighbors_at(u)) {
            edge_arcs.push_back(static_cast<std::uint32_t>(fg.arcs.size()));
            fg.add(out_of(u), in_of(v), 1, 1);
        }

    if (fg.augment_cheapest(in_of(s), out_of(t)) < 0)
        return out;
    out.connected = true;
    if (fg.augment_cheapest(in_of(s), out_of(t)) < 0) {
        // recover the single path for completeness
        std::vector<std::uint32_t> path{s};
        std::uint32_t cur = s;
        while (cur != t) {
            for (auto ai : edge_arcs) {
                if (fg.flow_on(ai) <= 0)
                    continue;
                auto from = fg.arcs[ai ^ 1].to;
                if ((split ? from / 2 : from) != cur)
                    continue;
                auto to = fg.arcs[ai].to;
                cur = split ? to / 2 : to;
                fg.arcs[ai ^ 1].cap -= 1; // consume
                path.push_back(cur);
                break;
            }
        }
        out.first = std::move(path);
        return out;
    }
    out.pair_found = true;

    // Decompose the 2-unit flow into two walks from s to t.
    // next[u] lists arc indices with positive flow leaving u.
    std::vector<std::vector<std::uint32_t>> next(n);
    for (auto ai : edge_arcs) {
        int f = fg.flow_on(ai);
        if (f <= 0)
            continue;
        auto from = fg.arcs[ai ^ 1].to;
        next[split ? from / 2 : from].push_back(ai);
    }
    for (int k = 0; k < 2; ++k) {
        std::vector<std::uint32_t> path{s};
        std::uint32_t cur = s;
        while (cur != t) {
            auto& cands = next[cur];
            if (cands.empty())
                throw MisuseError("flow decomposition failed");
            auto ai = cands.back();
            cands.pop_back();
            auto to = fg.arcs[ai].to;
            cur = split ? to / 2 : to;
            path.push_back(cur);
        }
        if (k == 0)
            out.first = std::move(path);
        else
            out.second = std::move(path);
    }
    if (out.second.size() < out.first.size())
        std::swap(out.first, out.second);
    return out;
}

// Lexicographically smallest (by node-id sequence) shortest path, so the
// heuristic's anchor is deterministic.
std::vector<std::uint32_t> lex_shortest_path(const Network& g, std::uint32_t s,
                                             std::uint32_t t) {
    auto dist_t = bfs_dist(g, t);
    if (dist_t[s] == kUnreached)
        return {};
    std::vector<std::uint32_t> path{s};
    std::uint32_t cur = s;
    while (cur != t) {
        std::uint32_t best = 0;
        bool found = false;
        NodeId best_id = 0;
        for (auto v : g.neighbors_at(cur)) {
            if (dist_t[v] != dist_t[cur] - 1)
                continue;
            if (!found || g.id_at(v) < best_id) {
                best = v;
                best_id = g.id_at(v);
                found = true;
            }
        }
        cur = best;
        path.push_back(cur);
    }
    return path;
}

std::vector<NodeId> to_ids(const Network& g, const std::vector<std::uint32_t>& p) {
    std::vector<NodeId> out;
    out.reserve(p.size());
    for (auto v : p)
        out.push_back(g.id_at(v));
    return out;
}

// Shortest path from s to t disjoint from `path` (interior nodes in node
// mode, edges always), as hop count plus witness.
std::optional<std::vector<std::uint32_t>> disjoint_complement(
    const Network& g, std::uint32_t s, std::uint32_t t,
    const std::vector<std::uint32_t>& path, DisjointnessMode mode) {
    std::vector<bool> blocked(g.node_count(), false);
    std::set<std::pair<std::uint32_t, std::uint32_t>> blocked_edges;
    if (mode == DisjointnessMode::NodeDisjoint)
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            blocked[path[i]] = true;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        blocked_edges.insert({std::min(path[i], path[i + 1]),
                              std::max(path[i], path[i + 1])});
    // parent-tracking BFS
    std::vector<int> parent(g.node_count(), -2);
    std::deque<std::uint32_t> q{s};
    parent[s] = -1;
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        if (u == t)
            break;
        for (auto v : g.neighbors_at(u)) {
            if (parent[v] != -2 || blocked[v])
                continue;
            if (blocked_edges.count({std::min(u, v), std::max(u, v)}))
                continue;
            parent[v] = static_cast<int>(u);
            q.push_back(v);
        }
    }
    if (parent[t] == -2)
        return std::nullopt;
    std::vector<std::uint32_t> out;
    for (int v = static_cast<int>(t); v != -1; v = parent[v])
        out.push_back(static_cast<std::uint32_t>(v));
    std::reverse(out.begin(), out.end());
    return out;
}

DistancePair exact_pair(const Network& g, std::uint32_t s, std::uint32_t t,
                        DisjointnessMode mode, const PairObjective& objective) {
    if (g.node_count() > objective.exact_node_budget)
        throw BudgetError("MinCostExact refused: " +
                          std::to_string(g.node_count()) + " nodes exceeds budget " +
                          std::to_string(objective.exact_node_budget));
    auto dist = bfs_dist(g, s);
    DistancePair best;
    if (dist[t] == kUnreached)
        return best; // (Q, Q)
    best.d = ExtLength(static_cast<std::uint32_t>(dist[t]));
    best.d_prime = ExtLength::infinite();

    bool have_pair = false;
    Rational best_cost;
    std::vector<NodeId> best_primary, best_backup;

    std::vector<std::uint32_t> stack{s};
    std::vector<bool> on_path(g.node_count(), false);
    on_path[s] = true;

    auto consider = [&](const std::vector<std::uint32_t>& p) {
        auto comp = disjoint_complement(g, s, t, p, mode);
        if (!comp)
            return;
        auto lp = static_cast<std::uint32_t>(p.size() - 1);
        auto lc = static_cast<std::uint32_t>(comp->size() - 1);
        const auto& shorter = lp <= lc ? p : *comp;
        const auto& longer = lp <= lc ? *comp : p;
        Rational cost = Rational(std::min(lp, lc)) +
                        objective.delta * Rational(std::max(lp, lc));
        auto sh_ids = to_ids(g, shorter);
        auto lo_ids = to_ids(g, longer);
        bool better = false;
        if (!have_pair || cost < best_cost) {
            better = true;
        } else if (cost == best_cost) {
            auto cur = std::make_tuple(std::min(lp, lc), sh_ids, lo_ids);
            auto prev = std::make_tuple(best.d.hops(), best_primary, best_backup);
            better = cur < prev;
        }
        if (better) {
            have_pair = true;
            best_cost = cost;
            best.d = ExtLength(std::min(lp, lc));
            best.d_prime = ExtLength(std::max(lp, lc));
            best_primary = std::move(sh_ids);
            best_backup = std::move(lo_ids);
        }
    };

    // DFS over all simple s-t paths.
    std::vector<std::size_t> iter{0};
    while (!stack.empty()) {
        auto u = stack.back();
        if (u == t) {
            consider(stack);
            on_path[u] = false;
            stack.pop_back();
            iter.pop_back();
            continue;
        }
        auto nbrs = g.neighbors_at(u);
        if (iter.back() >= nbrs.size()) {
            on_path[u] = false;
            stack.pop_back();
            iter.pop_back();
            continue;
        }
        auto v = nbrs[iter.back()++];
        if (on_path[v])
            continue;
        stack.push_back(v);
        iter.push_back(0);
        on_path[v] = true;
    }

    if (have_pair) {
        best.path = best_primary;
        best.backup = best_backup;
    } else {
        best.path = to_ids(g, lex_shortest_path(g, s, t));
    }
    return best;
}

} // namespace

ExtLength shortest_path_len(const Network& g, NodeId i, NodeId j) {
    auto si = g.index_of(i), sj = g.index_of(j);
    if (si == sj)
        return ExtLength(0);
    auto dist = bfs_dist(g, si);
    return dist[sj] == kUnreached ? ExtLength::infinite()
                                  : ExtLength(static_cast<std::uint32_t>(dist[sj]));
}

DistancePair disjoint_pair(const Network& g, NodeId i, NodeId j,
                           DisjointnessMode mode, const PairObjective& objective) {
    if (i == j)
        throw InputError("disjoint_pair requires i != j");
    auto s = g.index_of(i), t = g.index_of(j);

    switch (objective.kind) {
    case PairObjective::Kind::MinSum: {
        auto r = min_sum_pair(g, s, t, mode);
        DistancePair out;
        if (!r.connected)
            return out;
        if (!r.pair_found) {
            auto d = bfs_dist(g, s);
            out.d = ExtLength(static_cast<std::uint32_t>(d[t]));
            out.path = to_ids(g, r.first);
            return out;
        }
        out.d = ExtLength(static_cast<std::uint32_t>(r.first.size() - 1));
        out.d_prime = ExtLength(static_cast<std::uint32_t>(r.second.size() - 1));
        out.path = to_ids(g, r.first);
        out.backup = to_ids(g, r.second);
        return out;
    }
    case PairObjective::Kind::MinPrimaryHeuristic: {
        DistancePair out;
        auto anchor = lex_shortest_path(g, s, t);
        if (anchor.empty())
            return out;
        out.d = ExtLength(static_cast<std::uint32_t>(anchor.size() - 1));
        out.path = to_ids(g, anchor);
        if (auto comp = disjoint_complement(g, s, t, anchor, mode)) {
            out.d_prime = ExtLength(static_cast<std::uint32_t>(comp->size() - 1));
            out.backup = to_ids(g, *comp);
        }
        return out;
    }
    case PairObjective::Kind::MinCostExact:
        return exact_pair(g, s, t, mode, objective);
    }
    throw MisuseError("unreachable");
}

int count_disjoint_paths_to_set(const Network& g, NodeId i,
                                const std::set<NodeId>& core,
                                DisjointnessMode mode) {
    if (core.empty())
        throw InputError("core must be non-empty");
    if (core.count(i))
        throw InputError("source node is in the core");
    auto s = g.index_of(i);
    std::vector<std::uint32_t> core_idx;
    for (auto c : core)
        core_idx.push_back(g.index_of(c));

    const auto n = static_cast<std::uint32_t>(g.node_count());
    const bool split = mode == DisjointnessMode::NodeDisjoint;
    const std::uint32_t vn = (split ? 2 * n : n) + 1;
    const std::uint32_t sink = vn - 1;
    FlowGraph fg(vn);
    auto in_of = [&](std::uint32_t v) { return split ? 2 * v : v; };
    auto out_of = [&](std::uint32_t v) { return split ? 2 * v + 1 : v; };
    const int big = static_cast<int>(n);
    if (split)
        for (std::uint32_t v = 0; v < n; ++v) {
            bool is_core =
                std::find(core_idx.begin(), core_idx.end(), v) != core_idx.end();
            // core nodes terminate paths; they are not traversable
            fg.add(2 * v, 2 * v + 1, (v == s) ? big : (is_core ? 0 : 1), 0);
        }
    for (std::uint32_t u = 0; u < n; ++u)
        for (auto v : g.neighbors_at(u))
            fg.add(out_of(u), in_of(v), 1, 0);
    // paths may share a core endpoint: only interior nodes are capacity-1
    for (auto c : core_idx)
        fg.add(in_of(c), sink, big, 0);

    int flow = 0;
    while (fg.augment_cheapest(in_of(s), sink) >= 0)
        ++flow;
    return flow;
}

} // namespace relnet
