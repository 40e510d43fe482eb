#include "relnet/stability.hpp"

#include <algorithm>
#include <thread>

namespace relnet {

namespace {

ExtCost eval(const Network& g, const GameParams& p, NodeId i, bool bare) {
    return bare ? bare_node_cost(g, p, i) : node_cost(g, p, i);
}

} // namespace

StabilityReport is_pairwise_stable(const Network& g, const GameParams& p,
                                   bool bare) {
    StabilityReport rep;
    rep.small_model_warning = g.node_count() < 3;
    auto ids = g.node_ids();
    std::vector<ExtCost> base(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k)
        base[k] = eval(g, p, ids[k], bare);

    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            auto i = ids[a], j = ids[b];
            bool present = g.has_edge(i, j);
            Network mod = g;
            if (present)
                mod.remove_edge(i, j);
            else
                mod.add_edge(i, j);
            ExtCost di = eval(mod, p, i, bare) - base[a];
            ExtCost dj = eval(mod, p, j, bare) - base[b];
            ExtCost zero;
            bool violates;
            if (p.transfers_enabled)
                violates = di + dj < zero;
            else
                violates = present ? (di < zero || dj < zero)
                                   : (di < zero && dj < zero);
            if (violates)
                rep.violations.push_back({present
                                              ? Violation::Kind::BeneficialRemoval
                                              : Violation::Kind::BeneficialAddition,
                                          {i, j}, di, dj});
        }
    rep.stable = rep.violations.empty();
    return rep;
}

namespace {

Network mask_to_network(std::size_t n_a, std::size_t n_b, std::uint64_t mask) {
    Network g = make_players(n_a, n_b);
    const auto n = n_a + n_b;
    std::size_t bit = 0;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1)
                g.add_edge(u, v);
    return g;
}

void check_budget(std::size_t n, std::size_t budget) {
    if (n > budget)
        throw BudgetError("exhaustive enumeration refused: " + std::to_string(n) +
                          " players exceeds budget " + std::to_string(budget) +
                          " (2^" + std::to_string(n * (n - 1) / 2) + " graphs)");
}

} // namespace

std::vector<ScoredNetwork> enumerate_stable(const GameParams& p, std::size_t n_a,
                                            std::size_t n_b, bool bare,
                                            std::size_t budget) {
    const auto n = n_a + n_b;
    check_budget(n, budget);
    const std::uint64_t total = 1ull << (n * (n - 1) / 2);

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
    std::vector<std::vector<std::pair<std::uint64_t, ExtCost>>> found(workers);
    auto scan = [&](unsigned w) {
        for (std::uint64_t mask = w; mask < total; mask += workers) {
            Network g = mask_to_network(n_a, n_b, mask);
            if (is_pairwise_stable(g, p, bare).stable)
                found[w].push_back({mask, social_cost(g, p, bare)});
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(scan, w);
    scan(0);
    for (auto& t : pool)
        t.join();

    std::vector<std::pair<std::uint64_t, ExtCost>> merged;
    for (auto& part : found)
        merged.insert(merged.end(), part.begin(), part.end());
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<ScoredNetwork> out;
    out.reserve(merged.size());
    for (auto& [mask, social] : merged)
        out.push_back({mask_to_network(n_a, n_b, mask), std::move(social)});
    return out;
}

ScoredNetwork optimal_network(const GameParams& p, std::size_t n_a,
                              std::size_t n_b, bool bare, std::size_t budget) {
    const auto n = n_a + n_b;
    check_budget(n, budget);
    const std::uint64_t total = 1ull << (n * (n - 1) / 2);

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
    std::vector<std::optional<std::pair<std::uint64_t, ExtCost>>> best(workers);
    auto scan = [&](unsigned w) {
        for (std::uint64_t mask = w; mask < total; mask += workers) {
            auto social = social_cost(mask_to_network(n_a, n_b, mask), p, bare);
            // prefer lower cost; break ties by smaller mask for determinism
            if (!best[w] || social < best[w]->second ||
                (social == best[w]->second && mask < best[w]->first))
                best[w] = {mask, std::move(social)};
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(scan, w);
    scan(0);
    for (auto& t : pool)
        t.join();

    std::optional<std::pair<std::uint64_t, ExtCost>> overall;
    for (auto& b : best)
        if (b && (!overall || b->second < overall->second ||
                  (b->second == overall->second && b->first < overall->first)))
            overall = b;
    return {mask_to_network(n_a, n_b, overall->first), overall->second};
}

PriceMetrics price_metrics(const GameParams& p, std::size_t n_a, std::size_t n_b,
                           std::size_t budget) {
    PriceMetrics m;
    m.small_model_warning = n_a + n_b < 3;

    auto opt = optimal_network(p, n_a, n_b, false, budget);
    m.optimal_social = opt.social;
    m.optimal_witness = std::move(opt.net);

    auto stable = enumerate_stable(p, n_a, n_b, false, budget);
    if (stable.empty()) {
        m.stable_set_empty = true;
        return m;
    }
    const ScoredNetwork* best = &stable.front();
    const ScoredNetwork* worst = &stable.front();
    for (const auto& s : stable) {
        if (s.social < best->social)
            best = &s;
        if (worst->social < s.social)
            worst = &s;
    }
    m.best_stable_social = best->social;
    m.worst_stable_social = worst->social;
    m.best_stable_witness = best->net;
    m.worst_stable_witness = worst->net;
    m.pos = ExtRatio::of(best->social, m.optimal_social);
    m.poa = ExtRatio::of(worst->social, m.optimal_social);

    auto bare_stable = enumerate_stable(p, n_a, n_b, true, budget);
    if (!bare_stable.empty()) {
        const ExtCost* bare_best = &bare_stable.front().social;
        for (const auto& s : bare_stable)
            if (s.social < *bare_best)
                bare_best = &s.social;
        m.por = ExtRatio::of(best->social, *bare_best);
    }
    return m;
}

} // namespace relnet
