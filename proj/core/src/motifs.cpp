#include "relnet/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace relnet {

namespace {

std::vector<std::uint32_t> common_neighbors(const Network& g, std::uint32_t u,
                                            std::uint32_t v) {
    std::vector<std::uint32_t> a(g.neighbors_at(u).begin(), g.neighbors_at(u).end());
    std::vector<std::uint32_t> b(g.neighbors_at(v).begin(), g.neighbors_at(v).end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

} // namespace

long long double_star_count(const Network& g, int m) {
    if (m < 1)
        throw InputError("m must be at least 1");
    long long count = 0;
    for (const auto& [u, v] : g.edges()) {
        if (g.degree(u) <= static_cast<std::size_t>(m) ||
            g.degree(v) <= static_cast<std::size_t>(m))
            continue;
        auto shared = common_neighbors(g, g.index_of(u), g.index_of(v));
        if (shared.size() >= static_cast<std::size_t>(m))
            ++count;
    }
    return count;
}

long long entangled_cycle_count(const Network& g, int l) {
    if (l != 3 && l != 4)
        throw InputError("entangled-cycle counting supports l in {3, 4} only");
    long long count = 0;
    for (const auto& [u, v] : g.edges()) {
        auto shared = common_neighbors(g, g.index_of(u), g.index_of(v));
        auto s = static_cast<long long>(shared.size());
        if (l == 3)
            count += s; // triangle per (edge, common neighbor)
        else
            count += s * (s - 1) / 2; // chain a-u-v-d with cross links
    }
    if (l == 3)
        count /= 3; // each triangle seen from all three edges
    return count;
}

long long motif_count(const Network& g, MotifKind kind) {
    return kind.kind == MotifKind::Kind::DoubleStar
               ? double_star_count(g, kind.param)
               : entangled_cycle_count(g, kind.param);
}

CmSample configuration_model_sample(const std::vector<int>& degrees,
                                    std::uint64_t seed) {
    long long total = 0;
    for (auto d : degrees) {
        if (d < 0)
            throw InputError("negative degree");
        total += d;
    }
    if (total % 2 != 0)
        throw InputError("degree sum must be even");

    std::vector<std::uint32_t> stubs;
    stubs.reserve(static_cast<std::size_t>(total));
    for (std::uint32_t i = 0; i < degrees.size(); ++i)
        stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[i]), i);
    std::mt19937_64 rng(seed);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    CmSample out;
    for (std::uint32_t i = 0; i < degrees.size(); ++i)
        out.net.add_node(i, PlayerType::MinorB);
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
        auto u = stubs[k], v = stubs[k + 1];
        if (u == v || out.net.has_edge(u, v))
            ++out.erased;
        else
            out.net.add_edge(u, v);
    }
    return out;
}

std::optional<Rational> chebyshev_p_bound(const Rational& observed,
                                          const Rational& mean,
                                          const Rational& var) {
    if (!(observed > mean))
        return std::nullopt;
    Rational gap = observed - mean;
    Rational bound = var / (gap * gap);
    return bound > 1 ? Rational(1) : bound;
}

MotifReport null_model_stats(const Network& g, MotifKind kind, int samples,
                             std::uint64_t seed) {
    if (samples < 2)
        throw InputError("need at least 2 null samples");
    MotifReport rep;
    rep.observed = motif_count(g, kind);
    rep.samples = samples;

    std::vector<int> degrees;
    for (auto i : g.node_ids())
        degrees.push_back(static_cast<int>(g.degree(i)));

    std::vector<long long> counts(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        auto draw = configuration_model_sample(degrees, seed + static_cast<std::uint64_t>(s));
        counts[static_cast<std::size_t>(s)] = motif_count(draw.net, kind);
    }
    Rational sum = 0;
    for (auto c : counts)
        sum += Rational(c);
    rep.null_mean = sum / samples;
    Rational ss = 0;
    for (auto c : counts) {
        Rational d = Rational(c) - rep.null_mean;
        ss += d * d;
    }
    rep.null_var = ss / (samples - 1);
    rep.null_std = std::sqrt(to_double(rep.null_var));
    rep.p_bound = chebyshev_p_bound(Rational(rep.observed), rep.null_mean,
                                    rep.null_var);
    return rep;
}

Rational core_disjoint_ratio(const Network& g, const std::set<NodeId>& core,
                             DisjointnessMode mode) {
    if (core.empty())
        throw InputError("core must be non-empty");
    long long paths = 0, degree = 0, nodes = 0;
    for (auto i : g.node_ids()) {
        if (core.count(i))
            continue;
        ++nodes;
        paths += count_disjoint_paths_to_set(g, i, core, mode);
        degree += static_cast<long long>(g.degree(i));
    }
    if (nodes == 0)
        throw InputError("no nodes outside the core");
    if (degree == 0)
        return 0;
    return Rational(paths) / Rational(degree);
}

CycleStats mean_major_minor_cycle(const Network& g, const std::set<NodeId>& majors,
                                  const std::set<NodeId>& minors,
                                  std::optional<long long> sample,
                                  std::uint64_t seed) {
    if (majors.empty() || minors.empty())
        throw InputError("both player sets must be non-empty");
    CycleStats out;
    long long total = 0, used = 0, excluded = 0;

    auto eval_pair = [&](NodeId a, NodeId b) {
        auto pair = disjoint_pair(g, a, b, DisjointnessMode::NodeDisjoint,
                                  PairObjective::min_sum());
        if (pair.d_prime.is_infinite()) {
            ++excluded;
        } else {
            total += pair.d.hops() + pair.d_prime.hops();
            ++used;
        }
    };

    if (sample) {
        if (*sample <= 0)
            throw InputError("sample count must be positive");
        std::vector<NodeId> ma(majors.begin(), majors.end());
        std::vector<NodeId> mi(minors.begin(), minors.end());
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> da(0, ma.size() - 1);
        std::uniform_int_distribution<std::size_t> db(0, mi.size() - 1);
        for (long long k = 0; k < *sample; ++k) {
            auto a = ma[da(rng)];
            auto b = mi[db(rng)];
            if (a == b) {
                ++excluded;
                continue;
            }
            eval_pair(a, b);
        }
    } else {
        for (auto a : majors)
            for (auto b : minors)
                if (a != b)
                    eval_pair(a, b);
    }
    out.pairs_used = used;
    if (used > 0)
        out.mean = Rational(total) / Rational(used);
    if (used + excluded > 0)
        out.excluded_fraction = Rational(excluded) / Rational(used + excluded);
    return out;
}

} // namespace relnet
