#include "transport.hpp"

#include "errors.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace riccinet {

DiscreteMeasure uniform_neighbor_measure(const Graph& g, NodeId u) {
    auto nbrs = g.neighbors(u);
    if (nbrs.empty()) {
        throw ValidationError("node " + std::to_string(u) +
                              " has no neighbors to spread mass over");
    }
    DiscreteMeasure m;
    m.support.assign(nbrs.begin(), nbrs.end());
    m.mass.assign(nbrs.size(), 1.0 / static_cast<double>(nbrs.size()));
    return m;
}

namespace {

void check_measure(const DiscreteMeasure& m, const char* side) {
    if (m.support.size() != m.mass.size() || m.support.empty()) {
        throw ValidationError(std::string(side) +
                              " measure has mismatched or empty support");
    }
    double total = std::accumulate(m.mass.begin(), m.mass.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError(std::string(side) + " measure mass sums to " +
                              format_double(total) + ", expected 1");
    }
    for (double w : m.mass) {
        if (!(w > 0.0)) {
            throw ValidationError(std::string(side) +
                                  " measure has a non-positive mass atom");
        }
    }
}

} // namespace

double solve_transport(const Matrix& cost, std::span<const double> supply,
                       std::span<const double> demand) {
    const std::size_t m = supply.size();
    const std::size_t n = demand.size();
    if (cost.rows() != m || cost.cols() != n || m == 0 || n == 0) {
        throw ValidationError("transport cost matrix does not match the "
                              "marginals");
    }

    const double total_supply =
        std::accumulate(supply.begin(), supply.end(), 0.0);
    const double total_demand =
        std::accumulate(demand.begin(), demand.end(), 0.0);
    if (std::abs(total_supply - total_demand) > 1e-9 * (1.0 + total_supply)) {
        throw ValidationError("transport marginals carry unequal mass");
    }
    const double eps = 1e-13 * (1.0 + total_supply);

    std::vector<double> remaining_supply(supply.begin(), supply.end());
    std::vector<double> remaining_demand(demand.begin(), demand.end());
    Matrix flow(m, n, 0.0);

    // Johnson potentials keep reduced costs non-negative so every Dijkstra
    // pass runs on the residual graph directly. Node ids: sources 0..m-1,
    // sinks m..m+n-1.
    const std::size_t v_count = m + n;
    std::vector<double> potential(v_count, 0.0);
    std::vector<double> dist(v_count);
    std::vector<int> parent(v_count);
    std::vector<bool> done(v_count);
    const double inf = std::numeric_limits<double>::infinity();

    double shipped = 0.0;
    std::size_t guard = 0;
    const std::size_t max_iterations = 4 * (m + n) * (m + n) + 64;

    while (total_supply - shipped > eps) {
        if (++guard > max_iterations) {
            throw NumericError("transport solver failed to converge after " +
                               std::to_string(guard) + " augmentations");
        }

        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent.begin(), parent.end(), -1);
        std::fill(done.begin(), done.end(), false);
        for (std::size_t i = 0; i < m; ++i) {
            if (remaining_supply[i] > eps) dist[i] = 0.0;
        }

        // Dense Dijkstra; instances are small (supports are neighbor sets).
        for (std::size_t round = 0; round < v_count; ++round) {
            std::size_t u = v_count;
            double best = inf;
            for (std::size_t v = 0; v < v_count; ++v) {
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            }
            if (u == v_count) break;
            done[u] = true;
            if (u < m) {
                for (std::size_t j = 0; j < n; ++j) {
                    double reduced = cost(u, j) + potential[u] -
                                     potential[m + j];
                    if (reduced < 0.0) reduced = 0.0; // rounding noise only
                    double nd = dist[u] + reduced;
                    if (nd < dist[m + j] - 1e-18) {
                        dist[m + j] = nd;
                        parent[m + j] = static_cast<int>(u);
                    }
                }
            } else {
                std::size_t j = u - m;
                for (std::size_t i = 0; i < m; ++i) {
                    if (flow(i, j) <= eps) continue; // no residual back-arc
                    double reduced = -cost(i, j) + potential[u] -
                                     potential[i];
                    if (reduced < 0.0) reduced = 0.0;
                    double nd = dist[u] + reduced;
                    if (nd < dist[i] - 1e-18) {
                        dist[i] = nd;
                        parent[i] = static_cast<int>(u);
                    }
                }
            }
        }

        std::size_t target = v_count;
        double best = inf;
        for (std::size_t j = 0; j < n; ++j) {
            if (remaining_demand[j] > eps && dist[m + j] < best) {
                best = dist[m + j];
                target = m + j;
            }
        }
        if (target == v_count) {
            throw NumericError("transport solver found no augmenting path "
                               "with residual mass outstanding");
        }

        // Bottleneck along the path.
        double push = remaining_demand[target - m];
        for (std::size_t v = target; parent[v] >= 0;
             v = static_cast<std::size_t>(parent[v])) {
            std::size_t p = static_cast<std::size_t>(parent[v]);
            if (p < m && v >= m) continue; // forward arc, uncapacitated
            if (p >= m && v < m) {
                push = std::min(push, flow(v, p - m));
            }
        }
        {
            std::size_t v = target;
            while (parent[v] >= 0) v = static_cast<std::size_t>(parent[v]);
            push = std::min(push, remaining_supply[v]);
        }

        for (std::size_t v = target; parent[v] >= 0;
             v = static_cast<std::size_t>(parent[v])) {
            std::size_t p = static_cast<std::size_t>(parent[v]);
            if (p < m) {
                flow(p, v - m) += push;
            } else {
                flow(v, p - m) -= push;
            }
        }
        {
            std::size_t v = target;
            while (parent[v] >= 0) v = static_cast<std::size_t>(parent[v]);
            remaining_supply[v] -= push;
            if (remaining_supply[v] < eps) remaining_supply[v] = 0.0;
        }
        remaining_demand[target - m] -= push;
        if (remaining_demand[target - m] < eps) {
            remaining_demand[target - m] = 0.0;
        }
        shipped += push;

        // Capping the shift at dist[target] keeps reduced costs
        // non-negative even for nodes this pass never reached.
        double shift_cap = dist[target];
        for (std::size_t v = 0; v < v_count; ++v) {
            potential[v] += std::min(dist[v], shift_cap);
        }
    }

    double total_cost = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            total_cost += cost(i, j) * flow(i, j);
        }
    }
    return total_cost;
}

namespace {

// Support sorted by node, duplicate atoms merged.
std::vector<std::pair<NodeId, double>> flatten(const DiscreteMeasure& m) {
    std::vector<std::pair<NodeId, double>> atoms;
    atoms.reserve(m.support.size());
    for (std::size_t i = 0; i < m.support.size(); ++i) {
        atoms.emplace_back(m.support[i], m.mass[i]);
    }
    std::sort(atoms.begin(), atoms.end());
    std::vector<std::pair<NodeId, double>> merged;
    for (const auto& [node, mass] : atoms) {
        if (!merged.empty() && merged.back().first == node) {
            merged.back().second += mass;
        } else {
            merged.emplace_back(node, mass);
        }
    }
    return merged;
}

} // namespace

double wasserstein_w1(const DiscreteMeasure& mu, const DiscreteMeasure& mv,
                      const std::function<double(NodeId, NodeId)>& dist) {
    check_measure(mu, "source");
    check_measure(mv, "target");

    // With a metric cost, W1(mu, mv) = W1(mu - mu^mv, mv - mu^mv): shared
    // mass never has to move. This collapses the flow problem when the
    // supports overlap heavily (adjacent high-degree nodes).
    auto a = flatten(mu);
    auto b = flatten(mv);
    std::vector<std::pair<NodeId, double>> ra, rb;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            ra.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            rb.push_back(b[j++]);
        } else {
            double diff = a[i].second - b[j].second;
            if (diff > 1e-15) ra.emplace_back(a[i].first, diff);
            if (diff < -1e-15) rb.emplace_back(b[j].first, -diff);
            ++i;
            ++j;
        }
    }

    double residual = 0.0;
    for (const auto& [node, mass] : ra) residual += mass;
    if (ra.empty() || rb.empty() || residual < 1e-12) return 0.0;

    Matrix cost(ra.size(), rb.size());
    std::vector<double> supply(ra.size()), demand(rb.size());
    for (std::size_t r = 0; r < ra.size(); ++r) {
        supply[r] = ra[r].second;
        for (std::size_t c = 0; c < rb.size(); ++c) {
            double d = dist(ra[r].first, rb[c].first);
            if (!(d >= 0.0) || !std::isfinite(d)) {
                throw ValidationError(
                    "ground distance must be finite and non-negative");
            }
            cost(r, c) = d;
        }
    }
    for (std::size_t c = 0; c < rb.size(); ++c) demand[c] = rb[c].second;
    return solve_transport(cost, supply, demand);
}

} // namespace riccinet
