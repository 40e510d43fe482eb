#include "relnet/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace relnet {

namespace {

// Node costs keyed by (network digest, node); states recur constantly
// while the dynamics probe candidate moves.
struct CostCache {
    const GameParams& p;
    std::map<std::pair<std::uint64_t, NodeId>, ExtCost> store;

    explicit CostCache(const GameParams& p) : p(p) {}

    const ExtCost& raw(const Network& g, NodeId i) {
        auto key = std::make_pair(g.digest(), i);
        auto it = store.find(key);
        if (it == store.end())
            it = store.emplace(key, node_cost(g, p, i)).first;
        return it->second;
    }

    ExtCost adjusted(const Network& g, const PaymentMatrix& pay, NodeId i) {
        ExtCost c = raw(g, i);
        if (p.transfers_enabled)
            for (auto v : g.neighbors_at(g.index_of(i))) {
                auto j = g.id_at(v);
                c.finite += pay.get(i, j) - pay.get(j, i);
            }
        return c;
    }
};

struct Quote {
    ExtCost delta; // actor's raw cost change
    ExtCost price;
};

std::map<NodeId, Quote> quote_candidates(const Network& g, CostCache& cache,
                                         NodeId actor) {
    std::map<NodeId, Quote> out;
    std::map<NodeId, ExtCost> d_actor, d_other;
    for (auto j : g.node_ids()) {
        if (j == actor || g.has_edge(actor, j))
            continue;
        Network plus = g;
        plus.add_edge(actor, j);
        d_actor[j] = cache.raw(plus, actor) - cache.raw(g, actor);
        d_other[j] = cache.raw(plus, j) - cache.raw(g, j);
    }
    if (d_actor.empty())
        return out;
    // j*: the candidate worth least to the actor; its price only covers the
    // counterparty's harm. Everyone else marks up by their advantage.
    NodeId worst = d_actor.begin()->first;
    for (const auto& [j, d] : d_actor)
        if (d_actor[worst] < d)
            worst = j;
    ExtCost zero;
    ExtCost p_star = std::max(zero, d_other[worst]);
    ExtCost outside = d_actor[worst] + p_star;
    for (const auto& [j, d] : d_actor) {
        ExtCost alpha = outside - d;
        ExtCost price = std::max({zero, alpha, d_other[j]});
        out[j] = {d, price};
    }
    return out;
}

struct Pick {
    NodeId counterparty;
    ExtCost adjusted_delta;
    ExtCost price;
};

std::optional<Pick> pick_by_preference(const std::map<NodeId, Quote>& quotes,
                                       std::mt19937_64& rng) {
    std::optional<Pick> best;
    std::vector<NodeId> tied;
    ExtCost zero;
    for (const auto& [j, q] : quotes) {
        ExtCost total = q.delta + q.price;
        if (!(total < zero))
            continue;
        if (!best || total < best->adjusted_delta ||
            (total == best->adjusted_delta && q.price < best->price)) {
            best = Pick{j, total, q.price};
            tied = {j};
        } else if (total == best->adjusted_delta && q.price == best->price) {
            tied.push_back(j);
        }
    }
    if (best && tied.size() > 1) {
        auto idx = std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng);
        best->counterparty = tied[idx];
        best->price = quotes.at(tied[idx]).price;
        best->adjusted_delta = quotes.at(tied[idx]).delta + best->price;
    }
    return best;
}

std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) {
    return {std::min(a, b), std::max(a, b)};
}

// One strictly improving single move for the actor, or nothing.
std::optional<Move> single_move(const Network& g, const PaymentMatrix& pay,
                                const GameParams& p, CostCache& cache,
                                NodeId actor, std::mt19937_64& rng) {
    ExtCost zero;
    std::optional<Move> best;
    NodeId best_cp = 0;

    std::vector<NodeId> nbrs;
    for (auto v : g.neighbors_at(g.index_of(actor)))
        nbrs.push_back(g.id_at(v));
    std::sort(nbrs.begin(), nbrs.end());
    for (auto j : nbrs) {
        Network minus = g;
        minus.remove_edge(actor, j);
        ExtCost d = cache.raw(minus, actor) - cache.raw(g, actor);
        if (p.transfers_enabled)
            d.finite += pay.get(j, actor) - pay.get(actor, j);
        if (!(d < zero))
            continue;
        if (!best || d < best->actor_delta ||
            (d == best->actor_delta && j < best_cp)) {
            best = Move{LinkChange::Remove, ordered(actor, j), 0, d};
            best_cp = j;
        }
    }

    if (p.transfers_enabled) {
        auto pick = pick_by_preference(quote_candidates(g, cache, actor), rng);
        if (pick && (!best || pick->adjusted_delta < best->actor_delta)) {
            if (pick->price.q != 0)
                throw MisuseError("accepted price carries Q terms");
            best = Move{LinkChange::Add, ordered(actor, pick->counterparty),
                        pick->price.finite, pick->adjusted_delta};
        }
    } else {
        for (auto j : g.node_ids()) {
            if (j == actor || g.has_edge(actor, j))
                continue;
            Network plus = g;
            plus.add_edge(actor, j);
            ExtCost di = cache.raw(plus, actor) - cache.raw(g, actor);
            if (!(di < zero))
                continue;
            if (best && (best->actor_delta < di ||
                         (di == best->actor_delta && best_cp <= j)))
                continue;
            ExtCost dj = cache.raw(plus, j) - cache.raw(g, j);
            if (!(dj < zero)) // counterparty declines
                continue;
            best = Move{LinkChange::Add, ordered(actor, j), 0, di};
            best_cp = j;
        }
    }
    return best;
}

void apply_move(Network& g, PaymentMatrix& pay, NodeId actor, const Move& m) {
    if (m.change == LinkChange::Add) {
        g.add_edge(m.edge.first, m.edge.second);
        if (m.price != 0) {
            auto cp = m.edge.first == actor ? m.edge.second : m.edge.first;
            pay.set(actor, cp, m.price);
        }
    } else {
        g.remove_edge(m.edge.first, m.edge.second);
        pay.erase_edge(m.edge.first, m.edge.second);
    }
}

struct Plan {
    std::vector<Move> moves;
    ExtCost final_cost;
    Network net;
    PaymentMatrix pay;
};

// Evaluate one Rule2a plan: remove the given incident edges, then add
// greedily up to plan_depth links.
Plan run_plan(Network g, PaymentMatrix pay, const GameParams& p, CostCache& cache,
              NodeId actor, const std::vector<NodeId>& to_remove, int plan_depth,
              std::mt19937_64 rng) {
    Plan plan;
    ExtCost zero;
    for (auto j : to_remove) {
        Network before = g;
        g.remove_edge(actor, j);
        ExtCost d = cache.raw(g, actor) - cache.raw(before, actor);
        if (p.transfers_enabled)
            d.finite += pay.get(j, actor) - pay.get(actor, j);
        pay.erase_edge(actor, j);
        plan.moves.push_back({LinkChange::Remove, ordered(actor, j), 0, d});
    }
    for (int step = 0; step < plan_depth; ++step) {
        std::optional<Move> mv;
        if (p.transfers_enabled) {
            auto pick = pick_by_preference(quote_candidates(g, cache, actor), rng);
            if (pick) {
                if (pick->price.q != 0)
                    throw MisuseError("accepted price carries Q terms");
                mv = Move{LinkChange::Add, ordered(actor, pick->counterparty),
                          pick->price.finite, pick->adjusted_delta};
            }
        } else {
            // best accepted addition by actor delta, ties by lower id
            NodeId cp = 0;
            for (auto j : g.node_ids()) {
                if (j == actor || g.has_edge(actor, j))
                    continue;
                Network plus = g;
                plus.add_edge(actor, j);
                ExtCost di = cache.raw(plus, actor) - cache.raw(g, actor);
                if (!(di < zero))
                    continue;
                if (mv && (mv->actor_delta < di ||
                           (di == mv->actor_delta && cp <= j)))
                    continue;
                ExtCost dj = cache.raw(plus, j) - cache.raw(g, j);
                if (!(dj < zero))
                    continue;
                mv = Move{LinkChange::Add, ordered(actor, j), 0, di};
                cp = j;
            }
        }
        if (!mv)
            break;
        apply_move(g, pay, actor, *mv);
        plan.moves.push_back(*mv);
    }
    plan.final_cost = cache.adjusted(g, pay, actor);
    plan.net = std::move(g);
    plan.pay = std::move(pay);
    return plan;
}

// Removal subsets of the actor's links: everything up to degree 12, then
// only the cheap shapes the strategy arguments use (none, one, all).
std::vector<std::vector<NodeId>> removal_subsets(const Network& g, NodeId actor) {
    std::vector<NodeId> nbrs;
    for (auto v : g.neighbors_at(g.index_of(actor)))
        nbrs.push_back(g.id_at(v));
    std::sort(nbrs.begin(), nbrs.end());
    std::vector<std::vector<NodeId>> out;
    if (nbrs.size() <= 12) {
        out.resize(1ull << nbrs.size());
        for (std::size_t mask = 0; mask < out.size(); ++mask)
            for (std::size_t b = 0; b < nbrs.size(); ++b)
                if (mask >> b & 1)
                    out[mask].push_back(nbrs[b]);
    } else {
        out.push_back({});
        for (auto j : nbrs)
            out.push_back({j});
        out.push_back(nbrs);
    }
    return out;
}

std::vector<Move> turn_rule2a(Network& g, PaymentMatrix& pay, const GameParams& p,
                              CostCache& cache, NodeId actor, int plan_depth,
                              std::mt19937_64& rng) {
    std::vector<Move> all;
    for (int guard = 0; guard < 64; ++guard) {
        ExtCost current = cache.adjusted(g, pay, actor);
        std::optional<Plan> best;
        auto snapshot = rng;
        for (const auto& subset : removal_subsets(g, actor)) {
            auto plan =
                run_plan(g, pay, p, cache, actor, subset, plan_depth, snapshot);
            if (plan.final_cost < current &&
                (!best || plan.final_cost < best->final_cost))
                best = std::move(plan);
        }
        if (!best)
            break;
        g = std::move(best->net);
        pay = std::move(best->pay);
        all.insert(all.end(), best->moves.begin(), best->moves.end());
        rng(); // decouple subsequent draws from the plan search
    }
    return all;
}

std::vector<Move> turn_rule2b(Network& g, PaymentMatrix& pay, const GameParams& p,
                              CostCache& cache, NodeId actor,
                              std::mt19937_64& rng) {
    std::vector<Move> all;
    for (int guard = 0; guard < 1024; ++guard) {
        auto mv = single_move(g, pay, p, cache, actor, rng);
        if (!mv)
            break;
        apply_move(g, pay, actor, *mv);
        all.push_back(*mv);
    }
    return all;
}

std::vector<Move> play_turn(Network& g, PaymentMatrix& pay, const GameParams& p,
                            CostCache& cache, NodeId actor, DynamicRule rule,
                            std::mt19937_64& rng) {
    return rule.kind == DynamicRule::Kind::Rule2a
               ? turn_rule2a(g, pay, p, cache, actor, rule.plan_depth, rng)
               : turn_rule2b(g, pay, p, cache, actor, rng);
}

} // namespace

std::vector<Move> best_turn(Network& g, PaymentMatrix& pay, const GameParams& p,
                            NodeId actor, DynamicRule rule,
                            std::mt19937_64& rng) {
    CostCache cache(p);
    return play_turn(g, pay, p, cache, actor, rule, rng);
}

std::map<NodeId, ExtCost> strategic_prices(const Network& g, const GameParams& p,
                                           NodeId actor) {
    if (!p.transfers_enabled)
        throw MisuseError("strategic pricing requires transfers");
    CostCache cache(p);
    std::map<NodeId, ExtCost> out;
    for (const auto& [j, q] : quote_candidates(g, cache, actor))
        out[j] = q.price;
    return out;
}

std::optional<NodeId> choose_link(
    NodeId actor, const std::map<NodeId, std::pair<ExtCost, ExtCost>>& candidates,
    std::uint64_t seed) {
    (void)actor;
    std::map<NodeId, Quote> quotes;
    for (const auto& [j, dq] : candidates)
        quotes[j] = {dq.first, dq.second};
    std::mt19937_64 rng(seed);
    auto pick = pick_by_preference(quotes, rng);
    if (!pick)
        return std::nullopt;
    return pick->counterparty;
}

SimResult simulate(const GameParams& p, const Schedule& s, DynamicRule rule,
                   long max_rounds, std::uint64_t seed) {
    SimResult res;
    CostCache cache(p);
    std::mt19937_64 move_rng(seed);
    std::mt19937_64 order_rng(seed ^ 0x9e3779b97f4a7c15ull);

    auto arrivals = s.arrivals;
    std::stable_sort(arrivals.begin(), arrivals.end(),
                     [](const Arrival& a, const Arrival& b) { return a.turn < b.turn; });
    std::size_t next_arrival = 0;
    const long n_total = static_cast<long>(arrivals.size());
    const long turn_cap = std::max<long>(1, max_rounds) * std::max<long>(1, n_total);

    std::map<NodeId, long> last_acted;
    long last_change = -1;
    std::size_t rr_pos = 0;
    std::size_t exp_pos = 0;

    for (long t = 0; t < turn_cap; ++t) {
        NodeId actor;
        if (next_arrival < arrivals.size() &&
            arrivals[next_arrival].turn <= t) {
            const auto& a = arrivals[next_arrival++];
            res.net.add_node(a.id, a.type);
            last_acted[a.id] = -1;
            actor = a.id;
            last_change = t; // the player set changed
        } else if (res.net.node_count() == 0) {
            continue; // waiting for the first arrival
        } else {
            auto ids = res.net.node_ids();
            switch (s.policy) {
            case Schedule::OrderPolicy::RoundRobin:
                actor = ids[rr_pos++ % ids.size()];
                break;
            case Schedule::OrderPolicy::UniformRandom:
                actor = ids[std::uniform_int_distribution<std::size_t>(
                    0, ids.size() - 1)(order_rng)];
                break;
            case Schedule::OrderPolicy::Explicit: {
                if (s.explicit_order.empty())
                    throw InputError("explicit order policy without an order");
                NodeId cand = 0;
                bool found = false;
                for (std::size_t k = 0; k < s.explicit_order.size() && !found; ++k) {
                    cand = s.explicit_order[exp_pos++ % s.explicit_order.size()];
                    found = res.net.has_node(cand);
                }
                if (!found)
                    throw InputError("no present player in explicit order");
                actor = cand;
                break;
            }
            default:
                throw MisuseError("unknown order policy");
            }
        }

        auto moves =
            play_turn(res.net, res.payments, p, cache, actor, rule, move_rng);
        if (!moves.empty())
            last_change = t;
        last_acted[actor] = t;
        res.log.push_back({t, actor, std::move(moves), res.net.digest()});

        if (next_arrival == arrivals.size()) {
            bool settled = true;
            for (const auto& [id, at] : last_acted)
                if (at <= last_change) {
                    settled = false;
                    break;
                }
            if (settled) {
                res.converged = true;
                break;
            }
        }
        if (cache.store.size() > 2'000'000)
            cache.store.clear();
    }
    return res;
}

namespace {

bool majors_clique(const Network& g, const std::vector<NodeId>& majors) {
    for (std::size_t a = 0; a < majors.size(); ++a)
        for (std::size_t b = a + 1; b < majors.size(); ++b)
            if (!g.has_edge(majors[a], majors[b]))
                return false;
    return true;
}

std::vector<NodeId> sorted_neighbors(const Network& g, NodeId i) {
    std::vector<NodeId> out;
    for (auto v : g.neighbors_at(g.index_of(i)))
        out.push_back(g.id_at(v));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

StructureClass classify_structure(const Network& g, const GameParams& p) {
    (void)p;
    StructureClass res;
    std::vector<NodeId> majors, minors;
    for (auto i : g.node_ids())
        (g.type_of(i) == PlayerType::MajorA ? majors : minors).push_back(i);
    if (!majors_clique(g, majors))
        return res;
    auto is_major = [&](NodeId i) { return g.type_of(i) == PlayerType::MajorA; };

    // Optimal stable form: all minors on the same two majors, nothing else.
    if (majors.size() >= 2) {
        bool ok = true;
        std::vector<NodeId> anchor;
        for (auto m : minors) {
            auto nb = sorted_neighbors(g, m);
            if (nb.size() != 2 || !is_major(nb[0]) || !is_major(nb[1])) {
                ok = false;
                break;
            }
            if (anchor.empty())
                anchor = nb;
            else if (anchor != nb) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.kind = StructureClass::Kind::OptimalStable;
            for (auto a : majors)
                res.roles[a] = "clique";
            if (!anchor.empty()) {
                res.roles[anchor[0]] = "clique,x";
                res.roles[anchor[1]] = "clique,y";
            }
            for (auto m : minors)
                res.roles[m] = "leaf";
            return res;
        }
    }

    // Asymmetric single-star form: the minors funnel through a single
    // gateway. Either every minor is a pendant on one major k, or a single
    // minor x (the star center, adjacent to one or more majors) holds all
    // remaining minors as pendants on itself or on the gateway major k.
    if (!minors.empty()) {
        std::vector<NodeId> centers;
        for (auto m : minors)
            if (g.degree(m) > 1)
                centers.push_back(m);
        auto pendant_target = [&](NodeId m) -> std::optional<NodeId> {
            auto nb = sorted_neighbors(g, m);
            if (nb.size() == 1)
                return nb[0];
            return std::nullopt;
        };
        bool ok = centers.size() <= 1;
        std::optional<NodeId> x =
            centers.empty() ? std::nullopt : std::optional<NodeId>(centers[0]);
        std::vector<NodeId> x_majors;
        if (ok && x) {
            for (auto v : sorted_neighbors(g, *x))
                if (is_major(v))
                    x_majors.push_back(v);
            ok = !x_majors.empty();
        }
        std::optional<NodeId> k;
        if (ok) {
            for (auto m : minors) {
                if (x && m == *x)
                    continue;
                auto t = pendant_target(m);
                if (!t) {
                    ok = false;
                    break;
                }
                if (x && *t == *x)
                    continue; // member of S, hangs on the center
                if (!is_major(*t) || (k && *k != *t) ||
                    (x && !g.has_edge(*x, *t))) {
                    ok = false;
                    break;
                }
                k = *t; // member of L, hangs on the gateway major
            }
        }
        if (ok && !k && x)
            k = x_majors.front();
        if (ok && k && (!x || minors.size() >= 2)) {
            res.kind = StructureClass::Kind::SingleStarUnreliable;
            for (auto a : majors) {
                bool linked_x = x && g.has_edge(a, *x);
                res.roles[a] = a == *k          ? "clique,k"
                               : linked_x       ? "clique,d"
                                                : "clique";
            }
            for (auto m : minors)
                res.roles[m] = x && m == *x ? "center" : "leaf";
            return res;
        }
    }

    // Double-star form: primary center 1 (optionally secondary center 2);
    // every other minor in S1 (center 1 plus majors), S2 (both centers),
    // or L (two or more majors).
    auto try_centers = [&](NodeId c1, std::optional<NodeId> c2) -> bool {
        auto nb1 = sorted_neighbors(g, c1);
        if (!std::any_of(nb1.begin(), nb1.end(), is_major))
            return false;
        if (c2) {
            if (!g.has_edge(c1, *c2))
                return false;
            auto nb2 = sorted_neighbors(g, *c2);
            if (!std::any_of(nb2.begin(), nb2.end(), is_major))
                return false;
        }
        std::map<NodeId, std::string> roles;
        std::size_t s1 = 0;
        for (auto m : minors) {
            if (m == c1 || (c2 && m == *c2))
                continue;
            auto nb = sorted_neighbors(g, m);
            bool has_c1 = std::binary_search(nb.begin(), nb.end(), c1);
            bool has_c2 = c2 && std::binary_search(nb.begin(), nb.end(), *c2);
            std::size_t major_nbrs =
                static_cast<std::size_t>(std::count_if(nb.begin(), nb.end(), is_major));
            if (has_c1 && has_c2 && nb.size() == major_nbrs + 2)
                roles[m] = "S2";
            else if (has_c1 && major_nbrs >= 1 && nb.size() == major_nbrs + 1) {
                roles[m] = "S1";
                ++s1;
            } else if (!has_c1 && !has_c2 && major_nbrs >= 2 &&
                       nb.size() == major_nbrs)
                roles[m] = "L";
            else
                return false;
        }
        if (s1 == 0)
            return false;
        res.kind = StructureClass::Kind::DoubleStar;
        res.roles = std::move(roles);
        for (auto a : majors) {
            std::string r = "clique";
            if (g.has_edge(a, c1))
                r += ",D1";
            if (c2 && g.has_edge(a, *c2))
                r += ",D2";
            res.roles[a] = r;
        }
        res.roles[c1] = "center1";
        if (c2)
            res.roles[*c2] = "center2";
        return true;
    };
    // candidate centers: minors by descending minor-degree
    std::vector<NodeId> hubs = minors;
    auto minor_deg = [&](NodeId i) {
        auto nb = sorted_neighbors(g, i);
        return std::count_if(nb.begin(), nb.end(),
                             [&](NodeId j) { return !is_major(j); });
    };
    std::sort(hubs.begin(), hubs.end(), [&](NodeId a, NodeId b) {
        auto da = minor_deg(a), db = minor_deg(b);
        return da != db ? da > db : a < b;
    });
    for (auto c1 : hubs) {
        if (try_centers(c1, std::nullopt))
            return res;
        for (auto c2 : hubs)
            if (c2 != c1 && try_centers(c1, c2))
                return res;
    }
    return res;
}

GrowthResult entangled_growth(const GameParams& p, const Network& existing,
                              int arrivals, std::uint64_t seed) {
    if (!p.transfers_enabled)
        throw InputError("entangled growth requires transfers");
    if (existing.count_type(PlayerType::MajorA) < 10)
        throw InputError("entangled growth requires at least 10 major players");
    if (arrivals < 0)
        throw InputError("negative arrival count");

    GrowthResult res;
    res.net = existing;
    CostCache cache(p);

    // distance cost: full cost minus the link-price term
    auto distance_cost = [&](const Network& g, NodeId i) {
        ExtCost c = cache.raw(g, i);
        c.finite -= Rational(g.degree(i)) * p.link_price(g.type_of(i));
        return c;
    };
    std::optional<NodeId> top, second;
    for (auto i : res.net.node_ids()) {
        auto d = distance_cost(res.net, i);
        if (!top || distance_cost(res.net, *top) < d)
            second = std::exchange(top, i);
        else if (!second || distance_cost(res.net, *second) < d)
            second = i;
    }
    if (!top || !second)
        throw InputError("network too small for entangled growth");
    if (!res.net.has_edge(*top, *second))
        throw InputError("the two highest-distance-cost players (" +
                         std::to_string(*top) + ", " + std::to_string(*second) +
                         ") are not adjacent");
    if (arrivals > 0)
        res.chain = {*second, *top};

    std::mt19937_64 rng(seed);
    NodeId next_id = 0;
    for (auto i : res.net.node_ids())
        next_id = std::max(next_id, i + 1);

    res.chain_intact = true;
    for (int k = 0; k < arrivals; ++k) {
        NodeId id = next_id++;
        res.net.add_node(id, PlayerType::MinorB);
        play_turn(res.net, res.payments, p, cache, id,
                  {DynamicRule::Kind::Rule2a, 3}, rng);
        auto nb = sorted_neighbors(res.net, id);
        std::vector<NodeId> expect = {res.chain[res.chain.size() - 2],
                                      res.chain[res.chain.size() - 1]};
        std::sort(expect.begin(), expect.end());
        if (nb != expect)
            res.chain_intact = false;
        res.chain.push_back(id);
    }

    // l^2 + 4*l*(A*n_A) <= 20*A  <=>  l <= 2*sqrt((A*n_A)^2+5A) - 2*A*n_A
    Rational l(static_cast<long long>(res.chain.size()));
    Rational q = p.a * Rational(static_cast<long long>(
                           res.net.count_type(PlayerType::MajorA)));
    res.within_bound = l * l + 4 * l * q <= 20 * p.a;
    return res;
}

} // namespace relnet
