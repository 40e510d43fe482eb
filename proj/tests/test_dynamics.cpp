#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relnet/dynamics.hpp"
#include "relnet/stability.hpp"
#include "test_util.hpp"

#include <random>

using namespace relnet;
using namespace testutil;

namespace {

GameParams with_transfers(GameParams p) {
    p.transfers_enabled = true;
    return p;
}

ExtCost add_delta(const Network& g, const GameParams& p, NodeId who,
                  NodeId u, NodeId v) {
    return delta_cost(g, p, who, {u, v}, LinkChange::Add);
}

// The pricing formula evaluated directly from cost deltas.
std::map<NodeId, ExtCost> oracle_prices(const Network& g, const GameParams& p,
                                        NodeId actor) {
    std::map<NodeId, ExtCost> d_actor, d_other;
    for (auto j : g.node_ids()) {
        if (j == actor || g.has_edge(actor, j))
            continue;
        d_actor[j] = add_delta(g, p, actor, actor, j);
        d_other[j] = add_delta(g, p, j, actor, j);
    }
    std::map<NodeId, ExtCost> out;
    if (d_actor.empty())
        return out;
    auto worst = d_actor.begin()->first;
    for (const auto& [j, d] : d_actor)
        if (d_actor[worst] < d)
            worst = j;
    ExtCost zero;
    ExtCost p_star = std::max(zero, d_other[worst]);
    for (const auto& [j, d] : d_actor) {
        ExtCost alpha = d_actor[worst] + p_star - d;
        out[j] = std::max({zero, alpha, d_other[j]});
    }
    return out;
}

// Brute-force Rule2a fixpoint: repeatedly apply the best
// (removal-subset, <= depth greedy accepted additions) plan.
ExtCost oracle_rule2a_cost(Network g, const GameParams& p, NodeId actor,
                           int depth) {
    ExtCost zero;
    for (int guard = 0; guard < 64; ++guard) {
        ExtCost current = node_cost(g, p, actor);
        std::vector<NodeId> nbrs;
        for (auto v : g.neighbors_at(g.index_of(actor)))
            nbrs.push_back(g.id_at(v));
        std::sort(nbrs.begin(), nbrs.end());
        std::optional<Network> best;
        std::optional<ExtCost> best_cost;
        for (std::size_t mask = 0; mask < (1ull << nbrs.size()); ++mask) {
            Network h = g;
            for (std::size_t b = 0; b < nbrs.size(); ++b)
                if (mask >> b & 1)
                    h.remove_edge(actor, nbrs[b]);
            for (int step = 0; step < depth; ++step) {
                std::optional<NodeId> pick;
                std::optional<ExtCost> pick_delta;
                for (auto j : h.node_ids()) {
                    if (j == actor || h.has_edge(actor, j))
                        continue;
                    auto di = add_delta(h, p, actor, actor, j);
                    if (!(di < zero))
                        continue;
                    if (pick && (*pick_delta < di ||
                                 (di == *pick_delta && *pick <= j)))
                        continue;
                    if (!(add_delta(h, p, j, actor, j) < zero))
                        continue;
                    pick = j;
                    pick_delta = di;
                }
                if (!pick)
                    break;
                h.add_edge(actor, *pick);
            }
            auto cost = node_cost(h, p, actor);
            if (cost < current && (!best_cost || cost < *best_cost)) {
                best_cost = cost;
                best = std::move(h);
            }
        }
        if (!best)
            return current;
        g = std::move(*best);
    }
    return node_cost(g, p, actor);
}

// Major clique plus two adjacent minors, each two-connected to the core so
// a new arrival can satisfy its backup requirement through them alone.
// Node 11 holds one extra major link to keep the distance-cost order strict.
Network ten_major_seed() {
    Network g;
    for (NodeId i = 0; i < 10; ++i)
        g.add_node(i, PlayerType::MajorA);
    for (NodeId i = 0; i < 10; ++i)
        for (NodeId j = i + 1; j < 10; ++j)
            g.add_edge(i, j);
    g.add_node(10, PlayerType::MinorB);
    g.add_node(11, PlayerType::MinorB);
    for (NodeId m : {0, 1})
        g.add_edge(10, m);
    for (NodeId m : {0, 1, 2})
        g.add_edge(11, m);
    g.add_edge(10, 11);
    return g;
}

} // namespace

TEST_CASE("strategic prices match the formula on random graphs") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_graph(6, 0.45, rng, 2);
        auto p = with_transfers(GameParams::make(2 + trial % 3, 1, 2,
                                                 Rational(trial % 3) / 2,
                                                 trial % 2));
        NodeId actor = rng() % 6;
        auto got = strategic_prices(g, p, actor);
        auto want = oracle_prices(g, p, actor);
        CHECK(got == want);
        for (const auto& [j, price] : got) {
            ExtCost zero;
            CHECK(price >= zero);
            CHECK(price >= add_delta(g, p, j, actor, j)); // j never loses
        }
    }
}

TEST_CASE("single candidate pays only its own harm") {
    // complete network except (0,3): the lone candidate is its own worst
    // alternative, so the markup collapses and only the harm floor remains
    auto p = with_transfers(GameParams::make(3, 1, 2));
    auto g = build(2, 2, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    auto prices = strategic_prices(g, p, 0);
    REQUIRE(prices.size() == 1);
    ExtCost zero;
    CHECK(prices.at(3) == std::max(zero, add_delta(g, p, 3, 0, 3)));
}

TEST_CASE("worse-but-free option zeroes the floor, better one pays its edge") {
    // path 0-1-2-3 of minors: both candidates gain from linking 0, so
    // P* = 0; the nearer candidate is the worse one for the actor and goes
    // free, the farther one is charged exactly its advantage
    auto p = with_transfers(GameParams::make(2, 1, 1));
    auto g = build(0, 4, {{0, 1}, {1, 2}, {2, 3}});
    auto d2 = add_delta(g, p, 0, 0, 2);
    auto d3 = add_delta(g, p, 0, 0, 3);
    REQUIRE(d3 < d2); // the far end is the better link
    ExtCost zero;
    REQUIRE(add_delta(g, p, 2, 0, 2) < zero); // worst candidate gains: free
    auto prices = strategic_prices(g, p, 0);
    CHECK(prices.at(2) == zero);
    CHECK(prices.at(3) == d2 - d3);
}

TEST_CASE("choose_link preference order") {
    auto d = [](long long v) { return finite_cost(v); };
    SUBCASE("no candidate with negative adjusted delta") {
        std::map<NodeId, std::pair<ExtCost, ExtCost>> cands{
            {1, {d(2), d(0)}}, {2, {d(-1), d(1)}}};
        CHECK(!choose_link(0, cands, 7).has_value());
    }
    SUBCASE("ties by lower price") {
        std::map<NodeId, std::pair<ExtCost, ExtCost>> cands{
            {1, {d(-9), d(5)}}, {2, {d(-7), d(3)}}};
        // equal totals (-4): price 3 wins
        CHECK(choose_link(0, cands, 7) == NodeId{2});
    }
    SUBCASE("uniform tie-break") {
        std::map<NodeId, std::pair<ExtCost, ExtCost>> cands{
            {1, {d(-5), d(2)}}, {2, {d(-5), d(2)}}, {3, {d(-5), d(2)}}};
        std::map<NodeId, int> hits;
        const int draws = 10000;
        for (int s = 0; s < draws; ++s)
            ++hits[*choose_link(0, cands, s)];
        for (auto [j, n] : hits) {
            CHECK(n > draws * (1.0 / 3 - 0.05));
            CHECK(n < draws * (1.0 / 3 + 0.05));
        }
    }
}

TEST_CASE("rule2a turn reaches the brute-force plan fixpoint") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        auto g = random_graph(5, 0.4, rng, 2);
        auto p = GameParams::make(2 + trial % 2, 1, 2, Rational(trial % 2), 1);
        NodeId actor = rng() % 5;
        auto want = oracle_rule2a_cost(g, p, actor, 3);

        Network h = g;
        PaymentMatrix pay;
        std::mt19937_64 turn_rng(99);
        best_turn(h, pay, p, actor, {DynamicRule::Kind::Rule2a, 3}, turn_rng);
        CHECK(node_cost(h, p, actor) == want);
    }
}

TEST_CASE("no move available in a stable network") {
    auto p = GameParams::make(6, 2, 2, 1, 1);
    auto g = build(3, 2, {{0, 1}, {0, 2}, {1, 2}});
    for (NodeId m : {3, 4}) {
        g.add_edge(0, m);
        g.add_edge(1, m);
    }
    REQUIRE(is_pairwise_stable(g, p).stable);
    for (auto rule : {DynamicRule::Kind::Rule2a, DynamicRule::Kind::Rule2b})
        for (auto actor : g.node_ids()) {
            Network h = g;
            PaymentMatrix pay;
            std::mt19937_64 rng(5);
            auto moves = best_turn(h, pay, p, actor, {rule, 3}, rng);
            CHECK(moves.empty());
            CHECK(h == g);
        }
}

TEST_CASE("rule2b moves strictly improve the actor") {
    auto p = GameParams::make(5, 2, 3, 0, 1, DisjointnessMode::NodeDisjoint,
                              PairObjective::min_primary_heuristic());
    Schedule s;
    long t = 0;
    for (int i = 0; i < 3; ++i)
        s.arrivals.push_back({t++, static_cast<NodeId>(i), PlayerType::MajorA});
    for (int i = 0; i < 5; ++i) {
        s.arrivals.push_back({t, static_cast<NodeId>(3 + i), PlayerType::MinorB});
        t += 4 + i;
    }
    auto r = simulate(p, s, {DynamicRule::Kind::Rule2b, 3}, 50, 3);
    REQUIRE(r.converged);
    ExtCost zero;
    std::size_t total_moves = 0;
    for (const auto& tl : r.log)
        for (const auto& m : tl.moves) {
            CHECK(m.actor_delta < zero);
            ++total_moves;
        }
    CHECK(total_moves > 0);
}

TEST_CASE("replay determinism and log digests") {
    auto p = GameParams::make(5, 2, 3, 0, 1, DisjointnessMode::NodeDisjoint,
                              PairObjective::min_primary_heuristic());
    Schedule s;
    s.policy = Schedule::OrderPolicy::UniformRandom;
    long t = 0;
    for (int i = 0; i < 2; ++i)
        s.arrivals.push_back({t++, static_cast<NodeId>(i), PlayerType::MajorA});
    for (int i = 0; i < 4; ++i) {
        s.arrivals.push_back({t, static_cast<NodeId>(2 + i), PlayerType::MinorB});
        t += 3 + i;
    }
    auto a = simulate(p, s, {DynamicRule::Kind::Rule2b, 3}, 50, 42);
    auto b = simulate(p, s, {DynamicRule::Kind::Rule2b, 3}, 50, 42);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        CHECK(a.log[i].actor == b.log[i].actor);
        CHECK(a.log[i].network_hash == b.log[i].network_hash);
    }

    // replaying the moves reproduces every digest
    Network replay;
    auto arrivals = s.arrivals;
    std::size_t next = 0;
    for (const auto& tl : a.log) {
        while (next < arrivals.size() && arrivals[next].turn <= tl.turn) {
            replay.add_node(arrivals[next].id, arrivals[next].type);
            ++next;
        }
        for (const auto& m : tl.moves) {
            if (m.change == LinkChange::Add)
                replay.add_edge(m.edge.first, m.edge.second);
            else
                replay.remove_edge(m.edge.first, m.edge.second);
        }
        CHECK(replay.digest() == tl.network_hash);
    }
}

TEST_CASE("arrivals act on their arrival turn") {
    auto p = GameParams::make(2, 1, 1);
    Schedule s;
    s.arrivals = {{0, 0, PlayerType::MajorA}, {3, 1, PlayerType::MajorA}};
    auto r = simulate(p, s, {DynamicRule::Kind::Rule2b, 3}, 20, 0);
    REQUIRE(!r.log.empty());
    CHECK(r.log[0].actor == 0);
    bool linked_on_arrival = false;
    for (const auto& tl : r.log)
        if (tl.actor == 1 && !tl.moves.empty())
            linked_on_arrival = tl.turn == 3;
    CHECK(linked_on_arrival);
    CHECK(r.converged);
    CHECK(r.net.has_edge(0, 1));
}

TEST_CASE("structure classification") {
    auto p = GameParams::make(6, 2, 2, 1, 1);

    SUBCASE("two-anchor optimal stable form") {
        auto g = build(3, 3, {{0, 1}, {0, 2}, {1, 2}});
        for (NodeId m : {3, 4, 5}) {
            g.add_edge(0, m);
            g.add_edge(1, m);
        }
        auto c = classify_structure(g, p);
        CHECK(c.kind == StructureClass::Kind::OptimalStable);
        CHECK(c.roles.at(2) == "clique");
        CHECK(c.roles.at(3) == "leaf");
    }

    SUBCASE("minors anchored on different major pairs fall through") {
        auto g = build(4, 2, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        g.add_edge(0, 4);
        g.add_edge(1, 4);
        g.add_edge(2, 5);
        g.add_edge(3, 5);
        CHECK(classify_structure(g, p).kind == StructureClass::Kind::Other);
    }

    SUBCASE("double star, one center") {
        auto g = build(2, 3, {{0, 1}, {0, 2}, {2, 3}, {2, 4}, {0, 3}, {0, 4}});
        auto c = classify_structure(g, p);
        CHECK(c.kind == StructureClass::Kind::DoubleStar);
        CHECK(c.roles.at(2) == "center1");
        CHECK(c.roles.at(3) == "S1");
    }

    SUBCASE("double star, two centers with S2 and L members") {
        auto g = build(2, 5,
                       {{0, 1},
                        {0, 2},          // center 1 on major 0
                        {1, 3}, {2, 3},  // center 2 on major 1, linked to c1
                        {0, 4}, {2, 4},  // S1 member
                        {0, 5}, {2, 5}, {3, 5}, // S2 member
                        {0, 6}, {1, 6}}); // L member
        auto c = classify_structure(g, p);
        CHECK(c.kind == StructureClass::Kind::DoubleStar);
        CHECK(c.roles.at(2) == "center1");
        CHECK(c.roles.at(3) == "center2");
        CHECK(c.roles.at(4) == "S1");
        CHECK(c.roles.at(5) == "S2");
        CHECK(c.roles.at(6) == "L");
    }

    SUBCASE("single star: all minors pendant on one major") {
        auto g = build(3, 3, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {0, 5}});
        auto c = classify_structure(g, p);
        CHECK(c.kind == StructureClass::Kind::SingleStarUnreliable);
        CHECK(c.roles.at(0) == "clique,k");
    }

    SUBCASE("single star: minor center holding the pendants") {
        auto g = build(3, 4, {{0, 1}, {0, 2}, {1, 2}});
        g.add_edge(0, 6);
        g.add_edge(1, 6);
        for (NodeId m : {3, 4, 5})
            g.add_edge(6, m);
        auto c = classify_structure(g, p);
        CHECK(c.kind == StructureClass::Kind::SingleStarUnreliable);
        CHECK(c.roles.at(6) == "center");
        CHECK(c.roles.at(3) == "leaf");
        CHECK(c.roles.at(0) == "clique,k"); // gateway defaults to x's first major
        CHECK(c.roles.at(1) == "clique,d");
        CHECK(c.roles.at(2) == "clique");
    }

    SUBCASE("single star: center plus pendants on the gateway") {
        auto g = build(3, 4,
                       {{0, 1}, {0, 2}, {1, 2}, {0, 6}, {6, 3}, {6, 4}, {0, 5}});
        auto c = classify_structure(g, p);
        CHECK(c.kind == StructureClass::Kind::SingleStarUnreliable);
        CHECK(c.roles.at(0) == "clique,k");
        CHECK(c.roles.at(5) == "leaf");
    }

    SUBCASE("random graph is Other") {
        std::mt19937_64 rng(77);
        auto g = random_graph(10, 0.35, rng, 3);
        CHECK(classify_structure(g, p).kind == StructureClass::Kind::Other);
    }
}

TEST_CASE("entangled growth: preconditions and trivial case") {
    auto p = with_transfers(GameParams::make(2, 1, 100, 0, 1));

    SUBCASE("needs transfers") {
        auto np = GameParams::make(2, 1, 100, 0, 1);
        CHECK_THROWS_AS(entangled_growth(np, ten_major_seed(), 2, 1), InputError);
    }
    SUBCASE("needs ten majors") {
        CHECK_THROWS_AS(entangled_growth(p, build(3, 2, {{0, 1}}), 2, 1),
                        InputError);
    }
    SUBCASE("top two by distance cost must be adjacent") {
        auto g = ten_major_seed();
        g.remove_edge(10, 11); // the two q-laden minors lose their link
        CHECK_THROWS_AS(entangled_growth(p, g, 2, 1), InputError);
    }
    SUBCASE("zero arrivals change nothing") {
        auto g = ten_major_seed();
        auto r = entangled_growth(p, g, 0, 1);
        CHECK(r.chain.empty());
        CHECK(r.net == g);
        CHECK(r.chain_intact);
    }
}

TEST_CASE("entangled growth: arrivals chain onto the two previous") {
    auto p = with_transfers(GameParams::make(2, 1, 100, 0, 1));
    auto r = entangled_growth(p, ten_major_seed(), 4, 7);
    REQUIRE(r.chain.size() == 6); // seed pair + 4 arrivals
    CHECK(r.chain_intact);
    // square-of-path pattern over the chain
    for (std::size_t i = 2; i < r.chain.size(); ++i) {
        CHECK(r.net.has_edge(r.chain[i], r.chain[i - 1]));
        CHECK(r.net.has_edge(r.chain[i], r.chain[i - 2]));
    }
    // deterministic per seed
    auto r2 = entangled_growth(p, ten_major_seed(), 4, 7);
    CHECK(r2.net == r.net);
    CHECK(r2.chain == r.chain);
    // l^2 + 4*l*A*|T_A| <= 20*A is already false at l = 1 for these sizes
    CHECK(!r.within_bound);
}
