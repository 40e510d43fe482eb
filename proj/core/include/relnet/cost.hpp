#pragma once

#include "relnet/ext_cost.hpp"
#include "relnet/network.hpp"
#include "relnet/params.hpp"

#include <map>
#include <utility>

namespace relnet {

/// Recurring payments attached to existing edges: P[i][j] is what i pays j
/// for edge (i,j). Entries must be non-negative.
class PaymentMatrix {
public:
    void set(NodeId payer, NodeId payee, Rational amount);
    void erase_edge(NodeId i, NodeId j);
    Rational get(NodeId payer, NodeId payee) const;
    const std::map<std::pair<NodeId, NodeId>, Rational>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<NodeId, NodeId>, Rational> entries_;
};

enum class LinkChange { Add, Remove };

/// Full cost of node i: link prices plus reliability-weighted distance
/// terms. Every missing path or missing backup contributes one unit of Q.
ExtCost node_cost(const Network& g, const GameParams& p, NodeId i);

/// Single-path variant: link prices plus A-weighted shortest distances.
ExtCost bare_node_cost(const Network& g, const GameParams& p, NodeId i);

ExtCost social_cost(const Network& g, const GameParams& p, bool bare = false);

/// Cost-after minus cost-before for node i when `edge` is added/removed.
/// Negative means the change benefits i.
ExtCost delta_cost(const Network& g, const GameParams& p, NodeId i,
                   std::pair<NodeId, NodeId> edge, LinkChange change,
                   bool bare = false);

/// node_cost plus net transfers: C~(i) = C(i) + sum_j (P_ij - P_ji).
ExtCost transfer_adjusted_cost(const Network& g, const GameParams& p,
                               const PaymentMatrix& pay, NodeId i);

} // namespace relnet
