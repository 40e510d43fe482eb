#pragma once

#include "relnet/cost.hpp"

#include <optional>
#include <vector>

namespace relnet {

struct Violation {
    enum class Kind { BeneficialRemoval, BeneficialAddition };
    Kind kind;
    std::pair<NodeId, NodeId> edge;
    ExtCost delta_i; // endpoint with the smaller id
    ExtCost delta_j;
};

struct StabilityReport {
    bool stable = true;
    std::vector<Violation> violations;
    // The model's statements assume at least 3 players; smaller inputs are
    // evaluated anyway but flagged.
    bool small_model_warning = false;
};

/// Pairwise stability: no edge whose removal strictly benefits an endpoint
/// (or, with transfers, the endpoint pair in sum), and no absent edge whose
/// addition strictly benefits both endpoints (the sum, with transfers).
/// With bare=true the single-path cost model is used throughout.
StabilityReport is_pairwise_stable(const Network& g, const GameParams& p,
                                   bool bare = false);

struct ScoredNetwork {
    Network net;
    ExtCost social;
};

/// All pairwise-stable labeled graphs on n_a majors (ids 0..) and n_b
/// minors, each with its social cost. Exhaustive over 2^(N(N-1)/2) graphs;
/// refuses when n_a + n_b exceeds the budget.
std::vector<ScoredNetwork> enumerate_stable(const GameParams& p, std::size_t n_a,
                                            std::size_t n_b, bool bare = false,
                                            std::size_t budget = 7);

/// A social-cost-minimizing labeled graph over all graphs on these players.
ScoredNetwork optimal_network(const GameParams& p, std::size_t n_a,
                              std::size_t n_b, bool bare = false,
                              std::size_t budget = 7);

struct PriceMetrics {
    ExtCost optimal_social;
    std::optional<ExtCost> best_stable_social;  // absent: no stable network
    std::optional<ExtCost> worst_stable_social;
    ExtRatio pos;
    ExtRatio poa;
    std::optional<ExtRatio> por;
    std::optional<Network> optimal_witness;
    std::optional<Network> best_stable_witness;
    std::optional<Network> worst_stable_witness;
    bool stable_set_empty = false;
    bool small_model_warning = false;
};

/// PoS / PoA from the full-model stable set and optimum; PoR compares the
/// best stable social cost against the bare model's best stable social cost.
PriceMetrics price_metrics(const GameParams& p, std::size_t n_a, std::size_t n_b,
                           std::size_t budget = 7);

} // namespace relnet
