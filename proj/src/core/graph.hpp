#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace riccinet {

using NodeId = std::size_t;

// Simple undirected unweighted graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n) {}

    static Graph from_edges(std::size_t n,
                            std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<NodeId, NodeId>>& edges() const {
        return edges_;
    }

    // Rejects self-loops and duplicate edges.
    void add_edge(NodeId u, NodeId v);

    std::span<const NodeId> neighbors(NodeId u) const {
        return adjacency_[u];
    }
    std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
    bool has_edge(NodeId u, NodeId v) const;
    bool connected() const;

    // BFS hop counts from `from`; unreachable nodes get -1.
    std::vector<int> hop_distances(NodeId from) const;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::pair<NodeId, NodeId>> edges_; // stored with u < v
};

} // namespace riccinet
