#pragma once

#include "relnet/network.hpp"
#include "relnet/paths.hpp"
#include "relnet/rational.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace relnet {

struct MotifKind {
    enum class Kind { DoubleStar, EntangledCycle };
    Kind kind;
    int param; // m for DoubleStar, l for EntangledCycle

    static MotifKind double_star(int m) { return {Kind::DoubleStar, m}; }
    static MotifKind entangled_cycle(int l) { return {Kind::EntangledCycle, l}; }
};

/// Adjacent pairs (u,v), both of degree strictly above m, sharing at least
/// m neighbors. Unordered pairs counted once.
long long double_star_count(const Network& g, int m);

/// Occurrences of the square-of-path pattern of length l, counted as
/// subgraphs (embeddings modulo the pattern's automorphisms). l=3 is the
/// triangle count; l=4 counts (middle edge, unordered endpoint pair)
/// combinations. Only l in {3,4} is supported.
long long entangled_cycle_count(const Network& g, int l);

long long motif_count(const Network& g, MotifKind kind);

struct CmSample {
    Network net;            // simple graph after erasure
    long long erased = 0;   // self-loops and duplicate stubs dropped
};

/// Erased configuration model: uniform stub matching on the given degree
/// sequence, then self-loops and parallel edges dropped.
CmSample configuration_model_sample(const std::vector<int>& degrees,
                                    std::uint64_t seed);

struct MotifReport {
    long long observed = 0;
    Rational null_mean = 0;
    Rational null_var = 0;  // unbiased
    double null_std = 0;
    int samples = 0;
    std::optional<Rational> p_bound; // Chebyshev; only when observed > mean
};

/// Chebyshev bound var/(observed-mean)^2 clamped to 1; absent when the
/// observed count does not exceed the mean.
std::optional<Rational> chebyshev_p_bound(const Rational& observed,
                                          const Rational& mean,
                                          const Rational& var);

/// Observed motif count against configuration-model draws with g's degree
/// sequence.
MotifReport null_model_stats(const Network& g, MotifKind kind, int samples,
                             std::uint64_t seed);

/// (mean disjoint-path count from non-core nodes to the core) divided by
/// (mean degree of non-core nodes).
Rational core_disjoint_ratio(const Network& g, const std::set<NodeId>& core,
                             DisjointnessMode mode);

struct CycleStats {
    Rational mean = 0;          // over pairs joined by a cycle
    Rational excluded_fraction = 0; // pairs with no cycle
    long long pairs_used = 0;
};

/// Mean shortest-cycle length (MinSum d+d') over major-minor pairs, all of
/// them or `sample` draws with replacement.
CycleStats mean_major_minor_cycle(const Network& g, const std::set<NodeId>& majors,
                                  const std::set<NodeId>& minors,
                                  std::optional<long long> sample,
                                  std::uint64_t seed);

} // namespace relnet
