#pragma once

#include "relnet/cost.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace relnet {

/// Intra-turn move discipline. Rule2b: single moves, each strictly
/// improving. Rule2a: multi-move plans (remove a subset of own links, then
/// up to plan_depth greedily accepted additions) judged by final cost.
struct DynamicRule {
    enum class Kind { Rule2a, Rule2b };
    Kind kind = Kind::Rule2a;
    int plan_depth = 3;
};

struct Arrival {
    long turn; // global turn index at which the player joins (and acts)
    NodeId id;
    PlayerType type;
};

struct Schedule {
    enum class OrderPolicy { UniformRandom, RoundRobin, Explicit };
    std::vector<Arrival> arrivals;
    OrderPolicy policy = OrderPolicy::RoundRobin;
    std::vector<NodeId> explicit_order; // cycled; Explicit policy only
};

struct Move {
    LinkChange change;
    std::pair<NodeId, NodeId> edge;
    Rational price = 0; // paid by the actor to the counterparty (transfers)
    ExtCost actor_delta;
};

struct TurnLog {
    long turn;
    NodeId actor;
    std::vector<Move> moves;
    std::uint64_t network_hash; // digest of the post-turn network
};

/// Play one full turn for `actor`, mutating the network (and, with
/// transfers, the payment matrix). Returns the moves made, possibly none.
std::vector<Move> best_turn(Network& g, PaymentMatrix& pay, const GameParams& p,
                            NodeId actor, DynamicRule rule,
                            std::mt19937_64& rng);

/// Price quotes the actor would face for linking to each present
/// non-neighbor: the candidate-equalizing markup over the actor's worst
/// option, floored so the counterparty never loses. Prices are ExtCost
/// because a candidate's advantage can differ by whole Q terms; the price
/// eventually agreed on is always finite.
std::map<NodeId, ExtCost> strategic_prices(const Network& g, const GameParams& p,
                                           NodeId actor);

/// Preference order: minimize delta+price subject to it being negative;
/// ties by lower price; remaining ties uniformly at random.
std::optional<NodeId> choose_link(
    NodeId actor, const std::map<NodeId, std::pair<ExtCost, ExtCost>>& candidates,
    std::uint64_t seed);

struct SimResult {
    Network net;
    PaymentMatrix payments;
    std::vector<TurnLog> log;
    bool converged = false;
};

/// Run the turn-based dynamics. Deterministic given the seed. Convergence:
/// every present player has had a turn since the last change and no
/// arrivals are pending. Stops after max_rounds * N turns otherwise.
SimResult simulate(const GameParams& p, const Schedule& s, DynamicRule rule,
                   long max_rounds, std::uint64_t seed);

struct StructureClass {
    enum class Kind { OptimalStable, DoubleStar, SingleStarUnreliable, Other };
    Kind kind = Kind::Other;
    std::map<NodeId, std::string> roles;
};

/// Match the network against the structures the dynamics are expected to
/// reach: the optimal stable form (major clique, all minors on the same two
/// majors), the double-star form, or the asymmetric single-star form.
StructureClass classify_structure(const Network& g, const GameParams& p);

struct GrowthResult {
    Network net;
    PaymentMatrix payments;
    std::vector<NodeId> chain; // seed pair then arrivals, in link order
    bool chain_intact = false; // every arrival linked to the two previous
    bool within_bound = false; // l^2 + 4*l*A*|T_A| <= 20*A
};

/// Consecutive minor arrivals under strategic pricing, starting from the
/// two adjacent players with the highest distance cost. Refuses when the
/// top two are not adjacent or there are fewer than 10 majors.
GrowthResult entangled_growth(const GameParams& p, const Network& existing,
                              int arrivals, std::uint64_t seed);

} // namespace relnet
