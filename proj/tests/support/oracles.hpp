#pragma once

// Independent reference implementations used to check the library: a dense
// two-phase simplex for transport LPs, transport-polytope vertex
// enumeration, exhaustive spanning-tree search, direct covariance formulas,
// and graph/tree generators. None of these share code with the library
// paths they verify.

#include "graph.hpp"
#include "matrix.hpp"
#include "rng.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace riccinet::testing {

// Direct Pearson correlation of two columns: explicit covariance formula,
// sample normalization.
double pearson_direct(std::span<const double> x, std::span<const double> y);

// Minimum spanning tree weight by enumerating every labeled tree via
// Pruefer sequences (n^(n-2) of them).
double mst_brute_force_weight(const Matrix& dist);

// Optimal transport cost via a generic two-phase tableau simplex with
// Bland's rule.
double transport_lp_oracle(const Matrix& cost,
                           std::span<const double> supply,
                           std::span<const double> demand);

// Optimal transport cost by enumerating the basic feasible solutions
// (vertices) of the transport polytope. Exponential; keep m + n small.
double transport_vertex_oracle(const Matrix& cost,
                               std::span<const double> supply,
                               std::span<const double> demand);

// W1 between uniform neighbor measures of u and v under hop distance,
// going through the LP oracle.
double w1_oracle(const Graph& g, NodeId u, NodeId v);

std::vector<std::pair<NodeId, NodeId>> prufer_decode(
    std::span<const std::size_t> seq);

Graph random_tree(std::size_t n, Rng& rng);

// Random tree plus extra edges with probability p: always connected.
Graph random_connected_graph(std::size_t n, double p, Rng& rng);

// Calls fn for every connected labeled graph on exactly n nodes.
void for_each_connected_graph(std::size_t n,
                              const std::function<void(const Graph&)>& fn);

// Random probability measure on a nonempty random subset of nodes.
struct MeasureSample {
    std::vector<NodeId> support;
    std::vector<double> mass;
};
MeasureSample random_measure(std::size_t n_nodes, Rng& rng);

} // namespace riccinet::testing
