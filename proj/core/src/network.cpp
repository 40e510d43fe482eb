#include "relnet/network.hpp"

#include <algorithm>

namespace relnet {

std::uint32_t Network::add_node(NodeId id, PlayerType type) {
    if (index_.count(id))
        throw InputError("duplicate node id " + std::to_string(id));
    auto idx = static_cast<std::uint32_t>(ids_.size());
    ids_.push_back(id);
    types_.push_back(type);
    adj_.emplace_back();
    index_[id] = idx;
    return idx;
}

std::uint32_t Network::index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw InputError("unknown node id " + std::to_string(id));
    return it->second;
}

void Network::add_edge(NodeId u, NodeId v) {
    if (u == v)
        throw InputError("self-loop on node " + std::to_string(u));
    auto ui = index_of(u), vi = index_of(v);
    auto& un = adj_[ui];
    if (std::find(un.begin(), un.end(), vi) != un.end())
        throw InputError("duplicate edge");
    un.push_back(vi);
    adj_[vi].push_back(ui);
    ++edge_count_;
}

void Network::remove_edge(NodeId u, NodeId v) {
    auto ui = index_of(u), vi = index_of(v);
    auto& un = adj_[ui];
    auto it = std::find(un.begin(), un.end(), vi);
    if (it == un.end())
        throw InputError("no such edge");
    un.erase(it);
    auto& vn = adj_[vi];
    vn.erase(std::find(vn.begin(), vn.end(), ui));
    --edge_count_;
}

bool Network::has_edge(NodeId u, NodeId v) const {
    auto ui = index_of(u), vi = index_of(v);
    const auto& un = adj_[ui];
    return std::find(un.begin(), un.end(), vi) != un.end();
}

std::vector<NodeId> Network::node_ids() const {
    std::vector<NodeId> out;
    out.reserve(index_.size());
    for (const auto& [id, idx] : index_)
        out.push_back(id);
    return out;
}

std::vector<std::pair<NodeId, NodeId>> Network::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (std::uint32_t i = 0; i < ids_.size(); ++i)
        for (auto j : adj_[i]) {
            NodeId a = ids_[i], b = ids_[j];
            if (a < b)
                out.emplace_back(a, b);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Network::count_type(PlayerType t) const {
    return static_cast<std::size_t>(std::count(types_.begin(), types_.end(), t));
}

std::uint64_t Network::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [id, idx] : index_) {
        mix(id);
        mix(types_[idx] == PlayerType::MajorA ? 1 : 2);
    }
    for (const auto& [a, b] : edges()) {
        mix(a);
        mix(b);
    }
    return h;
}

bool Network::operator==(const Network& other) const {
    if (node_count() != other.node_count() || edge_count() != other.edge_count())
        return false;
    for (const auto& [id, idx] : index_) {
        if (!other.has_node(id) || other.type_of(id) != types_[idx])
            return false;
    }
    return edges() == other.edges();
}

Network make_players(std::size_t n_a, std::size_t n_b) {
    Network g;
    for (std::size_t i = 0; i < n_a + n_b; ++i)
        g.add_node(static_cast<NodeId>(i),
                   i < n_a ? PlayerType::MajorA : PlayerType::MinorB);
    return g;
}

} // namespace relnet
