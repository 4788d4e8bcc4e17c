#include "curvature.hpp"

#include "errors.hpp"
#include "parallel.hpp"
#include "transport.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace riccinet {

namespace {

void require_edge(const Graph& g, NodeId u, NodeId v) {
    if (!g.has_edge(u, v)) {
        throw ValidationError("(" + std::to_string(u) + ", " +
                              std::to_string(v) + ") is not an edge");
    }
}

// Packed adjacency rows for popcount-based common-neighbor counting.
class AdjacencyBits {
public:
    explicit AdjacencyBits(const Graph& g)
        : words_((g.node_count() + 63) / 64),
          bits_(g.node_count() * words_, 0) {
        for (NodeId u = 0; u < g.node_count(); ++u) {
            for (NodeId v : g.neighbors(u)) {
                bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
            }
        }
    }

    bool test(NodeId row, NodeId node) const {
        return bits_[row * words_ + node / 64] &
               (std::uint64_t{1} << (node % 64));
    }

    std::size_t common_count(NodeId a, NodeId b) const {
        const std::uint64_t* ra = bits_.data() + a * words_;
        const std::uint64_t* rb = bits_.data() + b * words_;
        std::size_t total = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            total += static_cast<std::size_t>(std::popcount(ra[w] & rb[w]));
        }
        return total;
    }

private:
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Simple u-v paths by edge length for lengths 2..4, counted in closed form
// from common-neighbor intersections. Interior nodes are explicitly
// excluded from {u, v}, so the counts match a simple-path DFS exactly.
void count_paths_bitset(const Graph& g, const AdjacencyBits& bits, NodeId u,
                        NodeId v, std::size_t max_len,
                        std::vector<std::size_t>& count_by_length) {
    if (max_len >= 2) count_by_length[2] = bits.common_count(u, v);
    if (max_len >= 3) {
        std::size_t l3 = 0;
        for (NodeId a : g.neighbors(u)) {
            if (a == v) continue;
            // b runs over N(a) & N(v); b = u is always in that set.
            l3 += bits.common_count(a, v) - 1;
        }
        count_by_length[3] = l3;
    }
    if (max_len >= 4) {
        std::size_t l4 = 0;
        for (NodeId a : g.neighbors(u)) {
            if (a == v) continue;
            bool a_next_to_v = bits.test(v, a);
            for (NodeId c : g.neighbors(v)) {
                if (c == u || c == a) continue;
                std::size_t inner = bits.common_count(a, c);
                if (bits.test(u, c)) --inner; // b = u
                if (a_next_to_v) --inner;     // b = v
                l4 += inner;
            }
        }
        count_by_length[4] = l4;
    }
}

double ollivier_with_metric(const Graph& g, NodeId u, NodeId v,
                            const std::vector<std::vector<int>>& hops) {
    DiscreteMeasure mu = uniform_neighbor_measure(g, u);
    DiscreteMeasure mv = uniform_neighbor_measure(g, v);
    double w1 = wasserstein_w1(mu, mv, [&](NodeId a, NodeId b) {
        return static_cast<double>(hops[a][b]);
    });
    return 1.0 - w1; // d(u, v) = 1 on the unweighted network
}

// Counts simple u-v paths by edge length without materializing them.
void count_paths(const Graph& g, NodeId target, NodeId current,
                 std::size_t length, std::size_t max_len,
                 std::vector<bool>& visited,
                 std::vector<std::size_t>& count_by_length) {
    for (NodeId next : g.neighbors(current)) {
        if (next == target) {
            if (length + 1 >= 2) ++count_by_length[length + 1];
            continue;
        }
        if (visited[next] || length + 1 >= max_len) continue;
        visited[next] = true;
        count_paths(g, target, next, length + 1, max_len, visited,
                    count_by_length);
        visited[next] = false;
    }
}

double haantjes_from_counts(const std::vector<std::size_t>& count_by_length,
                            const CurvatureOptions& opts) {
    // Per path pi: H^2(pi) = (l(pi) - d) / d^3 with d = 1.
    double total = 0.0;
    for (std::size_t len = 2; len < count_by_length.size(); ++len) {
        if (count_by_length[len] == 0) continue;
        double h2 = static_cast<double>(len - 1);
        double per_path = opts.haantjes_squared ? h2 : std::sqrt(h2);
        total += static_cast<double>(count_by_length[len]) * per_path;
    }
    return total;
}

std::vector<std::size_t> path_length_counts(const Graph& g, NodeId u,
                                            NodeId v, std::size_t max_len) {
    std::vector<std::size_t> counts(max_len + 1, 0);
    std::vector<bool> visited(g.node_count(), false);
    visited[u] = true;
    count_paths(g, v, u, 0, max_len, visited, counts);
    return counts;
}

double haantjes_with_bits(const Graph& g, const AdjacencyBits& bits,
                          NodeId u, NodeId v, const CurvatureOptions& opts) {
    if (opts.max_path_length > 4) {
        // Longer bounds fall back to the explicit DFS.
        return haantjes_from_counts(
            path_length_counts(g, u, v, opts.max_path_length), opts);
    }
    std::vector<std::size_t> counts(opts.max_path_length + 1, 0);
    count_paths_bitset(g, bits, u, v, opts.max_path_length, counts);
    return haantjes_from_counts(counts, opts);
}

} // namespace

double ollivier_curvature(const Graph& g, NodeId u, NodeId v) {
    require_edge(g, u, v);
    std::vector<std::vector<int>> hops(g.node_count());
    for (NodeId x : g.neighbors(u)) {
        if (hops[x].empty()) hops[x] = g.hop_distances(x);
    }
    // Reuse the rows already computed; wasserstein only reads hops[a][b]
    // for a in support(mu).
    return ollivier_with_metric(g, u, v, hops);
}

double forman_curvature(const Graph& g, NodeId u, NodeId v) {
    require_edge(g, u, v);
    // Unit weights: omega_u/omega_e + omega_v/omega_e minus one unit per
    // incident edge e_u ~ e or e_v ~ e.
    double sum = 0.0;
    for (NodeId x : g.neighbors(u)) {
        if (x != v) sum += 1.0;
    }
    for (NodeId x : g.neighbors(v)) {
        if (x != u) sum += 1.0;
    }
    return 1.0 + 1.0 - sum;
}

std::vector<NodeId> edge_triangles(const Graph& g, NodeId u, NodeId v) {
    require_edge(g, u, v);
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::vector<NodeId> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                          std::back_inserter(common));
    return common;
}

double menger_triangle_curvature(double a, double b, double c) {
    double p = (a + b + c) / 2.0;
    return std::sqrt(p * (p - a) * (p - b) * (p - c)) / (a * b * c);
}

double menger_curvature(const Graph& g, NodeId u, NodeId v) {
    auto triangles = edge_triangles(g, u, v);
    double total = 0.0;
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        total += menger_triangle_curvature(1.0, 1.0, 1.0);
    }
    return total;
}

std::vector<std::vector<NodeId>> enumerate_paths(const Graph& g, NodeId u,
                                                 NodeId v,
                                                 std::size_t max_len) {
    require_edge(g, u, v);
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> stack{u};
    std::vector<bool> visited(g.node_count(), false);
    visited[u] = true;

    auto dfs = [&](auto&& self, NodeId current) -> void {
        for (NodeId next : g.neighbors(current)) {
            if (next == v) {
                if (stack.size() >= 2) { // edge length >= 2
                    auto path = stack;
                    path.push_back(v);
                    paths.push_back(std::move(path));
                }
                continue;
            }
            if (visited[next] || stack.size() >= max_len) continue;
            visited[next] = true;
            stack.push_back(next);
            self(self, next);
            stack.pop_back();
            visited[next] = false;
        }
    };
    dfs(dfs, u);
    return paths;
}

double haantjes_curvature(const Graph& g, NodeId u, NodeId v,
                          const CurvatureOptions& opts) {
    require_edge(g, u, v);
    if (opts.max_path_length <= 4) {
        AdjacencyBits bits(g);
        return haantjes_with_bits(g, bits, u, v, opts);
    }
    auto counts = path_length_counts(g, u, v, opts.max_path_length);
    return haantjes_from_counts(counts, opts);
}

std::vector<EdgeCurvatures> edge_curvatures(const Graph& g,
                                            const CurvatureOptions& opts) {
    const auto& edges = g.edges();
    std::vector<EdgeCurvatures> out(edges.size());

    // One BFS per node and one packed adjacency, shared across all edges.
    std::vector<std::vector<int>> hops(g.node_count());
    parallel_for(g.node_count(),
                 [&](std::size_t i) { hops[i] = g.hop_distances(i); });
    AdjacencyBits bits(g);

    parallel_for(edges.size(), [&](std::size_t ei) {
        auto [u, v] = edges[ei];
        EdgeCurvatures ec;
        ec.ollivier = ollivier_with_metric(g, u, v, hops);
        ec.forman = forman_curvature(g, u, v);
        ec.menger = menger_curvature(g, u, v);
        ec.haantjes = haantjes_with_bits(g, bits, u, v, opts);
        out[ei] = ec;
    });
    return out;
}

CurvatureAverages average_curvatures(const Graph& g,
                                     const CurvatureOptions& opts) {
    if (g.edge_count() == 0) {
        throw ValidationError("cannot average curvature over an empty "
                              "edge set");
    }
    auto per_edge = edge_curvatures(g, opts);
    CurvatureAverages avg;
    for (const auto& ec : per_edge) {
        avg.ollivier += ec.ollivier;
        avg.forman += ec.forman;
        avg.menger += ec.menger;
        avg.haantjes += ec.haantjes;
    }
    double count = static_cast<double>(per_edge.size());
    avg.ollivier /= count;
    avg.forman /= count;
    avg.menger /= count;
    avg.haantjes /= count;
    return avg;
}

} // namespace riccinet
