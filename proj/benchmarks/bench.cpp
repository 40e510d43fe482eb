#include "relnet/cost.hpp"
#include "relnet/motifs.hpp"
#include "relnet/paths.hpp"
#include "relnet/stability.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace relnet;

namespace {

Network random_net(std::size_t n, double edge_prob, std::size_t n_major,
                   std::uint64_t seed) {
    Network g = make_players(n_major, n - n_major);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(edge_prob);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

void bm_disjoint_pair_min_sum(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.15, 3, 7);
    for (auto _ : state) {
        auto r = disjoint_pair(g, 0, static_cast<NodeId>(n - 1),
                               DisjointnessMode::NodeDisjoint,
                               PairObjective::min_sum());
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_disjoint_pair_min_sum)->Arg(20)->Arg(50)->Arg(100);

void bm_disjoint_pair_exact(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.15, 3, 7);
    for (auto _ : state) {
        auto r = disjoint_pair(g, 0, static_cast<NodeId>(n - 1),
                               DisjointnessMode::NodeDisjoint,
                               PairObjective::min_cost_exact(Rational(1) / 2));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_disjoint_pair_exact)->Arg(8)->Arg(12);

void bm_node_cost(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.2, 3, 11);
    auto p = GameParams::make(4, Rational(3) / 2, 2, 1, 1);
    for (auto _ : state) {
        auto c = node_cost(g, p, 0);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_node_cost)->Arg(15)->Arg(30)->Arg(60);

void bm_social_cost(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.2, 3, 11);
    auto p = GameParams::make(4, Rational(3) / 2, 2, 1, 1);
    for (auto _ : state) {
        auto c = social_cost(g, p);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_social_cost)->Arg(15)->Arg(30);

void bm_double_star_count(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.1, 0, 13);
    for (auto _ : state) {
        auto c = double_star_count(g, 2);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_double_star_count)->Arg(50)->Arg(150);

void bm_entangled_cycle_count(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.1, 0, 13);
    for (auto _ : state) {
        auto c = entangled_cycle_count(g, 4);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_entangled_cycle_count)->Arg(50)->Arg(150);

void bm_pairwise_stability(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = random_net(n, 0.3, 2, 17);
    auto p = GameParams::make(4, Rational(3) / 2, 2, 1, 1);
    for (auto _ : state) {
        auto r = is_pairwise_stable(g, p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_pairwise_stability)->Arg(6)->Arg(10);

} // namespace

BENCHMARK_MAIN();
