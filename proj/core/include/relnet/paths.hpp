#pragma once

#include "relnet/network.hpp"
#include "relnet/rational.hpp"

#include <optional>
#include <set>
#include <vector>

namespace relnet {

/// Hop count that may be the symbolic infinity Q. Q compares strictly
/// greater than every finite value and absorbs addition; it is never
/// approximated by a large finite constant.
class ExtLength {
public:
    constexpr ExtLength() : v_(kInf) {}
    constexpr explicit ExtLength(std::uint32_t hops) : v_(hops) {}
    static constexpr ExtLength infinite() { return ExtLength(); }

    constexpr bool is_infinite() const { return v_ == kInf; }
    std::uint32_t hops() const {
        if (is_infinite())
            throw MisuseError("Q has no finite hop count");
        return v_;
    }

    friend constexpr bool operator==(ExtLength a, ExtLength b) { return a.v_ == b.v_; }
    friend constexpr bool operator<(ExtLength a, ExtLength b) { return a.v_ < b.v_; }
    friend constexpr bool operator<=(ExtLength a, ExtLength b) { return a.v_ <= b.v_; }
    friend constexpr ExtLength operator+(ExtLength a, std::uint32_t k) {
        return a.is_infinite() ? a : ExtLength(a.v_ + k);
    }

private:
    static constexpr std::uint32_t kInf = 0xffffffffu;
    std::uint32_t v_;
};

enum class DisjointnessMode { NodeDisjoint, LinkDisjoint };

/// How the disjoint pair is selected. MinSum is exact for the "frequent
/// failures" weighting; MinPrimaryHeuristic anchors on the shortest path;
/// MinCostExact enumerates every disjoint pair (small graphs only).
struct PairObjective {
    enum class Kind { MinSum, MinPrimaryHeuristic, MinCostExact };
    Kind kind = Kind::MinSum;
    Rational delta = 1; // only read by MinCostExact
    std::size_t exact_node_budget = 12;

    static PairObjective min_sum() { return {Kind::MinSum, 1, 12}; }
    static PairObjective min_primary_heuristic() {
        return {Kind::MinPrimaryHeuristic, 0, 12};
    }
    static PairObjective min_cost_exact(Rational delta, std::size_t budget = 12) {
        if (delta < 0 || delta > 1)
            throw InputError("MinCostExact requires 0 <= delta <= 1");
        return {Kind::MinCostExact, std::move(delta), budget};
    }
};

/// Lengths (d, d') of the chosen pair of disjoint paths, d <= d'. The
/// witness paths, when present, include both endpoints.
struct DistancePair {
    ExtLength d;
    ExtLength d_prime;
    std::optional<std::vector<NodeId>> path;
    std::optional<std::vector<NodeId>> backup;
};

ExtLength shortest_path_len(const Network& g, NodeId i, NodeId j);

DistancePair disjoint_pair(const Network& g, NodeId i, NodeId j,
                           DisjointnessMode mode, const PairObjective& objective);

/// Maximum number of pairwise disjoint paths from i to the core set, as a
/// unit-capacity max-flow into a super-sink behind the core.
int count_disjoint_paths_to_set(const Network& g, NodeId i,
                                const std::set<NodeId>& core,
                                DisjointnessMode mode);

} // namespace relnet
