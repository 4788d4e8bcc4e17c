#pragma once

#include "graph.hpp"
#include "network.hpp"

#include <string>
#include <vector>

namespace riccinet {

struct CurvatureOptions {
    // Alternative paths longer than this many edges are ignored.
    std::size_t max_path_length = 4;
    // Sum the squared per-path Haantjes contribution instead of its root.
    bool haantjes_squared = false;
};

struct EdgeCurvatures {
    double ollivier = 0.0;
    double forman = 0.0;
    double menger = 0.0;
    double haantjes = 0.0;
};

struct CurvatureAverages {
    double ollivier = 0.0;
    double forman = 0.0;
    double menger = 0.0;
    double haantjes = 0.0;
};

// Per-window averaged edge curvature for each kind, aligned on window end
// dates.
struct CurvatureSeries {
    std::vector<std::string> window_end_dates;
    std::vector<double> ollivier;
    std::vector<double> forman;
    std::vector<double> menger;
    std::vector<double> haantjes;
    std::size_t size() const { return window_end_dates.size(); }
};

// 1 - W1(m_u, m_v) / d(u, v) with uniform neighbor measures and hop
// distances; d(u, v) = 1 because (u, v) is an edge of the unweighted graph.
double ollivier_curvature(const Graph& g, NodeId u, NodeId v);

// Combinatorial curvature with unit node and edge weights; every incident
// edge besides (u, v) contributes 1, which makes it 4 - deg(u) - deg(v).
double forman_curvature(const Graph& g, NodeId u, NodeId v);

// Nodes adjacent to both endpoints of (u, v); each spans one triangle.
std::vector<NodeId> edge_triangles(const Graph& g, NodeId u, NodeId v);

// Heron area over the side product: the curvature a metric triangle with
// sides a, b, c contributes.
double menger_triangle_curvature(double a, double b, double c);

double menger_curvature(const Graph& g, NodeId u, NodeId v);

// All simple u-v paths of edge length 2..max_len that do not use the edge
// (u, v) itself, each counted once.
std::vector<std::vector<NodeId>> enumerate_paths(const Graph& g, NodeId u,
                                                 NodeId v,
                                                 std::size_t max_len);

double haantjes_curvature(const Graph& g, NodeId u, NodeId v,
                          const CurvatureOptions& opts = {});

// All four curvatures for every edge, in g.edges() order. Safe to call
// concurrently; per-edge work is independent.
std::vector<EdgeCurvatures> edge_curvatures(const Graph& g,
                                            const CurvatureOptions& opts = {});

// Arithmetic mean over all edges of each per-edge curvature.
CurvatureAverages average_curvatures(const Graph& g,
                                     const CurvatureOptions& opts = {});

} // namespace riccinet
