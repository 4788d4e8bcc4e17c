#include "network.hpp"

#include "errors.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace riccinet {

CorrMatrix pearson_matrix(const Matrix& returns, std::size_t first_row,
                          std::size_t last_row,
                          std::span<const std::string> tickers) {
    if (last_row > returns.rows() || first_row >= last_row) {
        throw ValidationError("bad window rows [" +
                              std::to_string(first_row) + ", " +
                              std::to_string(last_row) + ")");
    }
    const std::size_t tau = last_row - first_row;
    const std::size_t n = returns.cols();
    if (tau < 3) {
        throw ValidationError("correlation window needs at least 3 rows, got " +
                              std::to_string(tau));
    }
    if (n < 2) {
        throw ValidationError("correlation needs at least 2 columns");
    }

    // Center the window once; covariance and standard deviations share the
    // sample normalization (tau - 1), which cancels in the ratio.
    Matrix centered(tau, n);
    std::vector<double> sumsq(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double mean = 0.0;
        for (std::size_t t = 0; t < tau; ++t) mean += returns(first_row + t, k);
        mean /= static_cast<double>(tau);
        double ss = 0.0;
        double max_abs_dev = 0.0;
        for (std::size_t t = 0; t < tau; ++t) {
            double dev = returns(first_row + t, k) - mean;
            centered(t, k) = dev;
            ss += dev * dev;
            max_abs_dev = std::max(max_abs_dev, std::abs(dev));
        }
        sumsq[k] = ss;
        // Deviations at the level of rounding noise in the mean count as
        // zero variance.
        double noise = 2.3e-16 * (1.0 + std::abs(mean));
        if (ss <= static_cast<double>(tau) * noise * noise) {
            std::string name = k < tickers.size()
                                   ? tickers[k]
                                   : "column " + std::to_string(k);
            throw ValidationError("zero-variance return series for " + name);
        }
    }

    CorrMatrix c;
    c.values = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        c.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < tau; ++t) {
                dot += centered(t, i) * centered(t, j);
            }
            double value = dot / std::sqrt(sumsq[i] * sumsq[j]);
            value = std::clamp(value, -1.0, 1.0);
            c.values(i, j) = value;
            c.values(j, i) = value;
        }
    }
    return c;
}

CorrMatrix pearson_matrix(const Matrix& returns,
                          std::span<const std::string> tickers) {
    return pearson_matrix(returns, 0, returns.rows(), tickers);
}

DistMatrix distance_matrix(const CorrMatrix& c) {
    const std::size_t n = c.size();
    DistMatrix d;
    d.values = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = std::sqrt(2.0 * (1.0 - c.values(i, j)));
            d.values(i, j) = v;
            d.values(j, i) = v;
        }
    }
    return d;
}

std::vector<std::pair<NodeId, NodeId>> mst_prim(const DistMatrix& d) {
    const std::size_t n = d.size();
    if (n < 2) {
        throw ValidationError("spanning tree needs at least 2 nodes");
    }

    // candidate[v] = cheapest known edge from the tree to v; ties resolved
    // by the (min index, max index) pair of the edge.
    struct Candidate {
        double weight = std::numeric_limits<double>::infinity();
        NodeId tree_node = 0;
    };
    auto edge_key = [](double w, NodeId a, NodeId b) {
        return std::tuple<double, NodeId, NodeId>(w, std::min(a, b),
                                                  std::max(a, b));
    };

    std::vector<Candidate> candidate(n);
    std::vector<bool> in_tree(n, false);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n - 1);

    NodeId current = 0;
    in_tree[0] = true;
    for (std::size_t added = 1; added < n; ++added) {
        for (NodeId v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            double w = d.values(current, v);
            auto& cand = candidate[v];
            if (edge_key(w, current, v) <
                edge_key(cand.weight, cand.tree_node, v)) {
                cand.weight = w;
                cand.tree_node = current;
            }
        }
        NodeId best = 0;
        bool found = false;
        for (NodeId v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (!found ||
                edge_key(candidate[v].weight, candidate[v].tree_node, v) <
                    edge_key(candidate[best].weight, candidate[best].tree_node,
                             best)) {
                best = v;
                found = true;
            }
        }
        NodeId u = candidate[best].tree_node;
        edges.emplace_back(std::min(u, best), std::max(u, best));
        in_tree[best] = true;
        current = best;
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

ThresholdNetwork threshold_network(const CorrMatrix& c, const DistMatrix& d,
                                   double theta) {
    const std::size_t n = c.size();
    if (d.size() != n) {
        throw ValidationError("correlation and distance matrices disagree "
                              "on size");
    }
    if (theta < -1.0 || theta > 1.0) {
        throw ValidationError("theta must lie in [-1, 1], got " +
                              format_double(theta));
    }

    auto mst = mst_prim(d);
    std::set<std::pair<NodeId, NodeId>> mst_set(mst.begin(), mst.end());

    ThresholdNetwork net;
    net.theta = theta;
    net.graph = Graph(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            bool in_mst = mst_set.count({i, j}) > 0;
            bool above = c.values(i, j) > theta;
            if (!in_mst && !above) continue;
            EdgeOrigin origin = in_mst && above ? EdgeOrigin::Both
                                : in_mst        ? EdgeOrigin::Mst
                                                : EdgeOrigin::Threshold;
            net.edges.push_back(
                {i, j, origin, c.values(i, j), d.values(i, j)});
            net.graph.add_edge(i, j);
        }
    }
    return net;
}

const char* edge_origin_name(EdgeOrigin origin) {
    switch (origin) {
    case EdgeOrigin::Mst: return "mst";
    case EdgeOrigin::Threshold: return "threshold";
    case EdgeOrigin::Both: return "both";
    }
    return "unknown";
}

} // namespace riccinet
