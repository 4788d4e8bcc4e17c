#pragma once

#include "graph.hpp"
#include "matrix.hpp"

#include <functional>
#include <span>
#include <vector>

namespace riccinet {

// Discrete probability measure on graph nodes. Masses are strictly positive
// and sum to 1 (checked to 1e-9 at construction sites that take user data).
struct DiscreteMeasure {
    std::vector<NodeId> support;
    std::vector<double> mass;
};

// Uniform measure over the neighbors of u, u itself excluded.
DiscreteMeasure uniform_neighbor_measure(const Graph& g, NodeId u);

// Exact optimum of the transportation problem min sum c(i,j) x(i,j) subject
// to row sums = supply, column sums = demand, x >= 0. Solved by successive
// shortest augmenting paths with Johnson potentials.
double solve_transport(const Matrix& cost, std::span<const double> supply,
                       std::span<const double> demand);

// Wasserstein-1 distance between two discrete measures. `dist` must be a
// metric (here: hop counts); W1 then depends only on the difference of the
// measures, so mass shared by both supports cancels before the flow
// problem is solved.
double wasserstein_w1(const DiscreteMeasure& mu, const DiscreteMeasure& mv,
                      const std::function<double(NodeId, NodeId)>& dist);

} // namespace riccinet
