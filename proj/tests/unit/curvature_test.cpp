#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvature.hpp"
#include "errors.hpp"
#include "market_data.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"
#include "rng.hpp"
#include "transport.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace riccinet;
namespace oracle = riccinet::testing;

namespace {

constexpr double kUnitTriangle = 0.4330127018922193; // sqrt(3)/4

Graph path_graph(std::size_t n) {
    Graph g(n);
    for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
}

Graph cycle_graph(std::size_t n) {
    Graph g(n);
    for (NodeId v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

double hop_cost(const Graph& g, NodeId a, NodeId b) {
    return static_cast<double>(g.hop_distances(a)[b]);
}

} // namespace

TEST_CASE("hop distances") {
    auto g = path_graph(4);
    auto d = g.hop_distances(0);
    CHECK(d == std::vector<int>{0, 1, 2, 3});
    CHECK(g.hop_distances(2)[2] == 0);
    CHECK(g.hop_distances(2)[1] == 1);
}

TEST_CASE("uniform neighbor measure") {
    auto g = star_graph(3);
    auto m = uniform_neighbor_measure(g, 0);
    REQUIRE(m.support.size() == 3);
    double total = 0.0;
    for (std::size_t i = 0; i < m.mass.size(); ++i) {
        CHECK(m.mass[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(m.support[i] != 0);
        total += m.mass[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("W1 of identical measures is zero") {
    auto g = complete_graph(4);
    auto m = uniform_neighbor_measure(g, 0);
    double w = wasserstein_w1(m, m, [&](NodeId a, NodeId b) {
        return hop_cost(g, a, b);
    });
    CHECK(w == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("W1 of point masses is the ground distance") {
    auto g = path_graph(5);
    DiscreteMeasure mu{{0}, {1.0}};
    DiscreteMeasure mv{{4}, {1.0}};
    double w = wasserstein_w1(mu, mv, [&](NodeId a, NodeId b) {
        return hop_cost(g, a, b);
    });
    CHECK(w == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("W1 on the triangle") {
    auto g = complete_graph(3);
    // Edge (0,1): measures sit on the other endpoint and the shared apex.
    auto mu = uniform_neighbor_measure(g, 0); // {1, 2}
    auto mv = uniform_neighbor_measure(g, 1); // {0, 2}
    auto dist = [&](NodeId a, NodeId b) { return hop_cost(g, a, b); };
    double w = wasserstein_w1(mu, mv, dist);
    CHECK(w == doctest::Approx(0.5).epsilon(1e-9));

    Matrix cost(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            cost(i, j) = dist(mu.support[i], mv.support[j]);
        }
    }
    CHECK(oracle::transport_vertex_oracle(cost, mu.mass, mv.mass) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(oracle::transport_lp_oracle(cost, mu.mass, mv.mass) ==
          doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("W1 agrees with both oracles on random instances") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + rng.uniform_index(5); // 3..7 nodes
        auto g = oracle::random_connected_graph(n, 0.4, rng);
        auto a = oracle::random_measure(n, rng);
        auto b = oracle::random_measure(n, rng);
        DiscreteMeasure mu{a.support, a.mass};
        DiscreteMeasure mv{b.support, b.mass};
        auto dist = [&](NodeId x, NodeId y) { return hop_cost(g, x, y); };

        double w = wasserstein_w1(mu, mv, dist);
        Matrix cost(mu.support.size(), mv.support.size());
        for (std::size_t i = 0; i < mu.support.size(); ++i) {
            for (std::size_t j = 0; j < mv.support.size(); ++j) {
                cost(i, j) = dist(mu.support[i], mv.support[j]);
            }
        }
        double lp = oracle::transport_lp_oracle(cost, mu.mass, mv.mass);
        CHECK(std::abs(w - lp) < 1e-7);
        if (mu.support.size() * mv.support.size() <= 16) {
            double vertex =
                oracle::transport_vertex_oracle(cost, mu.mass, mv.mass);
            CHECK(std::abs(w - vertex) < 1e-7);
        }
    }
}

TEST_CASE("W1 is symmetric and satisfies the triangle inequality") {
    Rng rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 4 + rng.uniform_index(5); // 4..8 nodes
        auto g = oracle::random_connected_graph(n, 0.35, rng);
        auto dist = [&](NodeId x, NodeId y) { return hop_cost(g, x, y); };
        auto sample = [&] {
            auto s = oracle::random_measure(n, rng);
            return DiscreteMeasure{s.support, s.mass};
        };
        auto a = sample(), b = sample(), c = sample();
        double ab = wasserstein_w1(a, b, dist);
        double ba = wasserstein_w1(b, a, dist);
        double bc = wasserstein_w1(b, c, dist);
        double ac = wasserstein_w1(a, c, dist);
        CHECK(std::abs(ab - ba) < 1e-9);
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_CASE("W1 validates its inputs") {
    DiscreteMeasure bad{{0, 1}, {0.4, 0.4}}; // sums to 0.8
    DiscreteMeasure good{{0}, {1.0}};
    auto unit = [](NodeId, NodeId) { return 1.0; };
    CHECK_THROWS_AS(wasserstein_w1(bad, good, unit), ValidationError);
    CHECK_THROWS_AS(wasserstein_w1(good, bad, unit), ValidationError);
}

TEST_CASE("ollivier curvature on canonical graphs") {
    // Isolated edge: point masses at the opposite endpoints.
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK(ollivier_curvature(edge, 0, 1) ==
          doctest::Approx(0.0).epsilon(1e-12));

    auto k3 = complete_graph(3);
    CHECK(ollivier_curvature(k3, 0, 1) ==
          doctest::Approx(0.5).epsilon(1e-9));

    // Star center-leaf edge against the LP oracle pipeline.
    auto star = star_graph(3);
    double expected = 1.0 - oracle::w1_oracle(star, 0, 1);
    CHECK(ollivier_curvature(star, 0, 1) ==
          doctest::Approx(expected).epsilon(1e-9));
    CHECK(ollivier_curvature(star, 0, 1) ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ollivier matches the LP oracle on random graphs") {
    Rng rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 4 + rng.uniform_index(5);
        auto g = oracle::random_connected_graph(n, 0.45, rng);
        for (auto [u, v] : g.edges()) {
            double got = ollivier_curvature(g, u, v);
            double expected = 1.0 - oracle::w1_oracle(g, u, v);
            CHECK(std::abs(got - expected) < 1e-7);
            CHECK(got <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("ollivier on tree edges equals the LP oracle, including "
          "negative values") {
    // A double star: degrees 3 and 2 across the bridge. Mass mismatch
    // forces transport around the bridge, so the curvature is negative,
    // not zero.
    Graph g(5);
    g.add_edge(1, 0); // node 1 with leaves 0, 2
    g.add_edge(1, 2);
    g.add_edge(1, 3); // bridge (1, 3)
    g.add_edge(3, 4); // node 3 with leaf 4
    double got = ollivier_curvature(g, 1, 3);
    double expected = 1.0 - oracle::w1_oracle(g, 1, 3);
    CHECK(std::abs(got - expected) < 1e-9);
    CHECK(got == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));

    Rng rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 4 + rng.uniform_index(10);
        auto tree = oracle::random_tree(n, rng);
        for (auto [u, v] : tree.edges()) {
            double w1 = 1.0 - ollivier_curvature(tree, u, v);
            CHECK(std::abs(w1 - oracle::w1_oracle(tree, u, v)) < 1e-9);
        }
    }
}

TEST_CASE("forman curvature") {
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK(forman_curvature(edge, 0, 1) == 2.0);

    auto k3 = complete_graph(3);
    CHECK(forman_curvature(k3, 0, 1) == 0.0);

    auto k4 = complete_graph(4);
    CHECK(forman_curvature(k4, 0, 1) == -2.0);

    Rng rng(113);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 3 + rng.uniform_index(12);
        auto g = oracle::random_connected_graph(n, 0.3, rng);
        for (auto [u, v] : g.edges()) {
            double expected = 4.0 - static_cast<double>(g.degree(u)) -
                              static_cast<double>(g.degree(v));
            CHECK(forman_curvature(g, u, v) == expected);
        }
    }
}

TEST_CASE("triangle enumeration") {
    Rng rng(127);
    auto tree = oracle::random_tree(8, rng);
    for (auto [u, v] : tree.edges()) {
        CHECK(edge_triangles(tree, u, v).empty());
    }

    auto k3 = complete_graph(3);
    CHECK(edge_triangles(k3, 0, 1) == std::vector<NodeId>{2});

    auto k4 = complete_graph(4);
    CHECK(edge_triangles(k4, 0, 1) == std::vector<NodeId>{2, 3});
}

TEST_CASE("menger curvature") {
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK(menger_curvature(edge, 0, 1) == 0.0);

    auto k3 = complete_graph(3);
    CHECK(menger_curvature(k3, 0, 1) ==
          doctest::Approx(kUnitTriangle).epsilon(1e-9));

    auto k4 = complete_graph(4);
    CHECK(menger_curvature(k4, 0, 1) ==
          doctest::Approx(2.0 * kUnitTriangle).epsilon(1e-9));

    CHECK(menger_triangle_curvature(1.0, 1.0, 1.0) ==
          doctest::Approx(kUnitTriangle).epsilon(1e-12));

    Rng rng(131);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = oracle::random_connected_graph(3 + rng.uniform_index(10),
                                                0.4, rng);
        for (auto [u, v] : g.edges()) {
            double count =
                static_cast<double>(edge_triangles(g, u, v).size());
            CHECK(std::abs(menger_curvature(g, u, v) -
                           count * kUnitTriangle) < 1e-9);
        }
    }
}

TEST_CASE("path enumeration") {
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK(enumerate_paths(edge, 0, 1, 4).empty());

    auto k3 = complete_graph(3);
    auto paths = enumerate_paths(k3, 0, 1, 4);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0] == std::vector<NodeId>{0, 2, 1});

    auto c4 = cycle_graph(4);
    auto c4_paths = enumerate_paths(c4, 0, 1, 4);
    REQUIRE(c4_paths.size() == 1);
    CHECK(c4_paths[0] == std::vector<NodeId>{0, 3, 2, 1});

    // The bound counts edges: the length-4 path around C5 is kept, the
    // length-5 path around C6 is not.
    auto c5_paths = enumerate_paths(cycle_graph(5), 0, 1, 4);
    REQUIRE(c5_paths.size() == 1);
    CHECK(c5_paths[0].size() == 5);
    CHECK(enumerate_paths(cycle_graph(6), 0, 1, 4).empty());
}

TEST_CASE("haantjes curvature") {
    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK(haantjes_curvature(edge, 0, 1) == 0.0);

    auto k3 = complete_graph(3);
    CHECK(haantjes_curvature(k3, 0, 1) ==
          doctest::Approx(1.0).epsilon(1e-12));

    auto c4 = cycle_graph(4);
    CHECK(haantjes_curvature(c4, 0, 1) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CurvatureOptions squared;
    squared.haantjes_squared = true;
    CHECK(haantjes_curvature(k3, 0, 1, squared) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(haantjes_curvature(c4, 0, 1, squared) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("haantjes agrees with explicit path enumeration") {
    Rng rng(137);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = oracle::random_connected_graph(3 + rng.uniform_index(8),
                                                0.4, rng);
        for (auto [u, v] : g.edges()) {
            double expected = 0.0;
            for (const auto& path : enumerate_paths(g, u, v, 4)) {
                expected += std::sqrt(static_cast<double>(path.size()) - 2.0);
            }
            CHECK(haantjes_curvature(g, u, v) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }

    // Same cross-check on dense graphs and for every path bound, since the
    // closed-form counting and the DFS are independent routes.
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 6 + rng.uniform_index(9);
        double p = rng.uniform(0.5, 0.95);
        auto g = oracle::random_connected_graph(n, p, rng);
        for (std::size_t max_len = 2; max_len <= 5; ++max_len) {
            CurvatureOptions opts;
            opts.max_path_length = max_len;
            for (auto [u, v] : g.edges()) {
                double expected = 0.0;
                for (const auto& path : enumerate_paths(g, u, v, max_len)) {
                    expected +=
                        std::sqrt(static_cast<double>(path.size()) - 2.0);
                }
                CHECK(haantjes_curvature(g, u, v, opts) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("haantjes never decreases when an edge is added") {
    Rng rng(139);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = 5 + rng.uniform_index(5);
        auto g = oracle::random_connected_graph(n, 0.3, rng);
        auto [u, v] = g.edges()[rng.uniform_index(g.edge_count())];
        double before = haantjes_curvature(g, u, v);

        std::vector<std::pair<NodeId, NodeId>> missing;
        for (NodeId a = 0; a < n; ++a) {
            for (NodeId b = a + 1; b < n; ++b) {
                if (!g.has_edge(a, b)) missing.emplace_back(a, b);
            }
        }
        if (missing.empty()) continue;
        auto extra = missing[rng.uniform_index(missing.size())];
        Graph bigger = g;
        bigger.add_edge(extra.first, extra.second);
        CHECK(haantjes_curvature(bigger, u, v) >= before - 1e-12);
    }
}

TEST_CASE("curvature averages on canonical graphs") {
    Graph edge(2);
    edge.add_edge(0, 1);
    auto avg = average_curvatures(edge);
    CHECK(avg.ollivier == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(avg.forman == 2.0);
    CHECK(avg.menger == 0.0);
    CHECK(avg.haantjes == 0.0);

    auto k3_avg = average_curvatures(complete_graph(3));
    CHECK(k3_avg.ollivier == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(k3_avg.forman == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(k3_avg.menger == doctest::Approx(kUnitTriangle).epsilon(1e-9));
    CHECK(k3_avg.haantjes == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("average equals the mean of per-edge values") {
    Rng rng(149);
    auto g = oracle::random_connected_graph(9, 0.35, rng);
    auto per_edge = edge_curvatures(g);
    auto avg = average_curvatures(g);
    double sum_or = 0.0, sum_fr = 0.0, sum_mr = 0.0, sum_hr = 0.0;
    for (const auto& e : per_edge) {
        sum_or += e.ollivier;
        sum_fr += e.forman;
        sum_mr += e.menger;
        sum_hr += e.haantjes;
    }
    double count = static_cast<double>(per_edge.size());
    CHECK(std::abs(avg.ollivier - sum_or / count) < 1e-12);
    CHECK(std::abs(avg.forman - sum_fr / count) < 1e-12);
    CHECK(std::abs(avg.menger - sum_mr / count) < 1e-12);
    CHECK(std::abs(avg.haantjes - sum_hr / count) < 1e-12);
}

TEST_CASE("average fails on an empty edge set") {
    Graph g(3);
    CHECK_THROWS_AS(average_curvatures(g), ValidationError);
}

TEST_CASE("curvature series over windows") {
    // One 6-row block tiled three times: identical windows, constant series.
    Rng rng(151);
    Matrix block(6, 4);
    for (std::size_t t = 0; t < 6; ++t) {
        for (std::size_t k = 0; k < 4; ++k) {
            block(t, k) = rng.normal(0.0, 0.02);
        }
    }
    ReturnMatrix rm;
    rm.tickers = {"A", "B", "C", "D"};
    rm.returns = Matrix(18, 4);
    for (std::size_t t = 0; t < 18; ++t) {
        rm.dates.push_back("d" + std::to_string(10 + t));
        for (std::size_t k = 0; k < 4; ++k) {
            rm.returns(t, k) = block(t % 6, k);
        }
    }

    auto one = make_schedule(6, WindowScheme::NonOverlapping, 6, 0);
    auto series_one = compute_curvature_series(rm, one, 0.75, {});
    REQUIRE(series_one.size() == 1);
    CHECK(series_one.window_end_dates[0] == "d15");

    auto three = make_schedule(18, WindowScheme::NonOverlapping, 6, 0);
    auto series = compute_curvature_series(rm, three, 0.75, {});
    REQUIRE(series.size() == 3);
    for (std::size_t w = 1; w < 3; ++w) {
        CHECK(series.ollivier[w] == series.ollivier[0]);
        CHECK(series.forman[w] == series.forman[0]);
        CHECK(series.menger[w] == series.menger[0]);
        CHECK(series.haantjes[w] == series.haantjes[0]);
    }
    CHECK(series_one.ollivier[0] == series.ollivier[0]);
}
