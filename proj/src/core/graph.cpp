#include "graph.hpp"

#include "errors.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace riccinet {

Graph Graph::from_edges(std::size_t n,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(NodeId u, NodeId v) {
    if (u == v) {
        throw ValidationError("self-loop at node " + std::to_string(u));
    }
    if (u >= node_count() || v >= node_count()) {
        throw ValidationError("edge endpoint out of range: (" +
                              std::to_string(u) + ", " + std::to_string(v) +
                              ") in graph of " + std::to_string(node_count()) +
                              " nodes");
    }
    if (has_edge(u, v)) {
        throw ValidationError("duplicate edge (" + std::to_string(u) + ", " +
                              std::to_string(v) + ")");
    }
    if (u > v) std::swap(u, v);
    auto& au = adjacency_[u];
    auto& av = adjacency_[v];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    edges_.emplace_back(u, v);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto& au = adjacency_[u];
    return std::binary_search(au.begin(), au.end(), v);
}

bool Graph::connected() const {
    if (node_count() == 0) return true;
    auto dist = hop_distances(0);
    return std::none_of(dist.begin(), dist.end(),
                        [](int d) { return d < 0; });
}

std::vector<int> Graph::hop_distances(NodeId from) const {
    std::vector<int> dist(node_count(), -1);
    std::deque<NodeId> queue;
    dist[from] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : adjacency_[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

} // namespace riccinet
