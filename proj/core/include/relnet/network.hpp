#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relnet {

using NodeId = std::uint32_t;

enum class PlayerType { MajorA, MinorB };

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MisuseError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Undirected simple graph over typed players. Node ids are arbitrary;
/// internally nodes get contiguous indices so the path algorithms can use
/// flat arrays.
class Network {
public:
    Network() = default;

    std::uint32_t add_node(NodeId id, PlayerType type);
    bool has_node(NodeId id) const { return index_.count(id) != 0; }
    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    void add_edge(NodeId u, NodeId v);
    void remove_edge(NodeId u, NodeId v);
    bool has_edge(NodeId u, NodeId v) const;

    std::uint32_t index_of(NodeId id) const;
    NodeId id_at(std::uint32_t idx) const { return ids_.at(idx); }
    PlayerType type_of(NodeId id) const { return types_[index_of(id)]; }
    PlayerType type_at(std::uint32_t idx) const { return types_.at(idx); }

    std::size_t degree(NodeId id) const { return adj_[index_of(id)].size(); }
    std::span<const std::uint32_t> neighbors_at(std::uint32_t idx) const {
        return adj_.at(idx);
    }

    /// All node ids, ascending.
    std::vector<NodeId> node_ids() const;
    /// Edges as (min id, max id) pairs, lexicographically sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    std::size_t count_type(PlayerType t) const;

    /// FNV-1a digest over node set (with types) and sorted edge list.
    std::uint64_t digest() const;

    bool operator==(const Network& other) const;

private:
    std::vector<NodeId> ids_;
    std::vector<PlayerType> types_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::map<NodeId, std::uint32_t> index_;
    std::size_t edge_count_ = 0;
};

/// Complete graph on the first n_a ids {0..} as majors and n_b minors.
Network make_players(std::size_t n_a, std::size_t n_b);

} // namespace relnet
