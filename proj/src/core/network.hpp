#pragma once

#include "graph.hpp"
#include "matrix.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace riccinet {

// Pearson correlation matrix of one return window: symmetric, unit
// diagonal, every entry clamped into [-1, 1].
struct CorrMatrix {
    Matrix values;
    std::size_t size() const { return values.rows(); }
};

// d_ij = sqrt(2 (1 - c_ij)): symmetric, zero diagonal, entries in [0, 2].
struct DistMatrix {
    Matrix values;
    std::size_t size() const { return values.rows(); }
};

enum class EdgeOrigin { Mst, Threshold, Both };

struct NetworkEdge {
    NodeId u = 0;
    NodeId v = 0;
    EdgeOrigin origin = EdgeOrigin::Mst;
    double correlation = 0.0;
    double distance = 0.0;
};

// MST edges plus every pair with correlation strictly above theta. The
// graph is treated as unweighted downstream; correlations and distances on
// the edges are retained for reporting only.
struct ThresholdNetwork {
    Graph graph;
    std::vector<NetworkEdge> edges; // sorted by (u, v)
    double theta = 0.0;
};

// Sample-normalized Pearson correlation over rows [first_row, last_row) of
// `returns`. Ticker names, when provided, only improve error messages.
CorrMatrix pearson_matrix(const Matrix& returns, std::size_t first_row,
                          std::size_t last_row,
                          std::span<const std::string> tickers = {});
CorrMatrix pearson_matrix(const Matrix& returns,
                          std::span<const std::string> tickers = {});

DistMatrix distance_matrix(const CorrMatrix& c);

// Dense Prim over the complete distance graph. Among equal-weight candidate
// edges the one with the smallest (min node index, max node index) pair
// wins, so the result is deterministic.
std::vector<std::pair<NodeId, NodeId>> mst_prim(const DistMatrix& d);

ThresholdNetwork threshold_network(const CorrMatrix& c, const DistMatrix& d,
                                   double theta);

const char* edge_origin_name(EdgeOrigin origin);

} // namespace riccinet
