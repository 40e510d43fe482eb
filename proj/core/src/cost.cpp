#include "relnet/cost.hpp"

#include "relnet/paths.hpp"

namespace relnet {

void PaymentMatrix::set(NodeId payer, NodeId payee, Rational amount) {
    if (amount < 0)
        throw InputError("payments must be non-negative");
    if (amount == 0)
        entries_.erase({payer, payee});
    else
        entries_[{payer, payee}] = std::move(amount);
}

void PaymentMatrix::erase_edge(NodeId i, NodeId j) {
    entries_.erase({i, j});
    entries_.erase({j, i});
}

Rational PaymentMatrix::get(NodeId payer, NodeId payee) const {
    auto it = entries_.find({payer, payee});
    return it == entries_.end() ? Rational(0) : it->second;
}

namespace {

struct DistanceSums {
    // finite hop totals, per target class
    long long d_a = 0, dp_a = 0, d_b = 0, dp_b = 0;
    long long q = 0;
};

// Accumulate d / d' over all targets j != i. Which slots feed q depends on
// which terms the parameters keep: the backup slot of minor targets only
// exists when tau = 1.
DistanceSums gather(const Network& g, const GameParams& p, NodeId i) {
    DistanceSums s;
    for (auto j : g.node_ids()) {
        if (j == i)
            continue;
        auto pair = disjoint_pair(g, i, j, p.mode, p.objective);
        bool major = g.type_of(j) == PlayerType::MajorA;
        if (pair.d.is_infinite())
            ++s.q;
        else
            (major ? s.d_a : s.d_b) += pair.d.hops();
        bool backup_counts = major || p.tau == 1;
        if (backup_counts) {
            if (pair.d_prime.is_infinite())
                ++s.q;
            else
                (major ? s.dp_a : s.dp_b) += pair.d_prime.hops();
        }
    }
    return s;
}

} // namespace

ExtCost node_cost(const Network& g, const GameParams& p, NodeId i) {
    auto s = gather(g, p, i);
    Rational finite = Rational(g.degree(i)) * p.link_price(g.type_of(i));
    finite += p.a / (1 + p.delta) * (Rational(s.d_a) + p.delta * Rational(s.dp_a));
    if (p.tau == 1)
        finite += (Rational(s.d_b) + p.delta * Rational(s.dp_b)) / (1 + p.delta);
    else
        finite += Rational(s.d_b);
    return {s.q, std::move(finite)};
}

ExtCost bare_node_cost(const Network& g, const GameParams& p, NodeId i) {
    long long d_a = 0, d_b = 0, q = 0;
    for (auto j : g.node_ids()) {
        if (j == i)
            continue;
        auto d = shortest_path_len(g, i, j);
        if (d.is_infinite())
            ++q;
        else if (g.type_of(j) == PlayerType::MajorA)
            d_a += d.hops();
        else
            d_b += d.hops();
    }
    Rational finite = Rational(g.degree(i)) * p.link_price(g.type_of(i));
    finite += p.a * Rational(d_a) + Rational(d_b);
    return {q, std::move(finite)};
}

ExtCost social_cost(const Network& g, const GameParams& p, bool bare) {
    ExtCost total;
    for (auto i : g.node_ids())
        total += bare ? bare_node_cost(g, p, i) : node_cost(g, p, i);
    return total;
}

ExtCost delta_cost(const Network& g, const GameParams& p, NodeId i,
                   std::pair<NodeId, NodeId> edge, LinkChange change, bool bare) {
    bool present = g.has_edge(edge.first, edge.second);
    if (change == LinkChange::Add && present)
        throw InputError("edge already present");
    if (change == LinkChange::Remove && !present)
        throw InputError("edge not present");
    Network after = g;
    if (change == LinkChange::Add)
        after.add_edge(edge.first, edge.second);
    else
        after.remove_edge(edge.first, edge.second);
    auto eval = [&](const Network& n) {
        return bare ? bare_node_cost(n, p, i) : node_cost(n, p, i);
    };
    return eval(after) - eval(g);
}

ExtCost transfer_adjusted_cost(const Network& g, const GameParams& p,
                               const PaymentMatrix& pay, NodeId i) {
    for (const auto& [edge, amount] : pay.entries()) {
        (void)amount;
        if (!g.has_edge(edge.first, edge.second))
            throw InputError("payment on absent edge");
    }
    ExtCost c = node_cost(g, p, i);
    for (auto v : g.neighbors_at(g.index_of(i))) {
        auto j = g.id_at(v);
        c.finite += pay.get(i, j) - pay.get(j, i);
    }
    return c;
}

} // namespace relnet
