#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errors.hpp"
#include "market_data.hpp"
#include "pipeline.hpp"
#include "rng.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

using namespace riccinet;

namespace {

PriceMatrix load_from(const std::string& csv) {
    std::istringstream in(csv);
    return load_prices(in);
}

} // namespace

TEST_CASE("load_prices keeps complete tables as-is") {
    auto pm = load_from("date,AAA,BBB\n"
                        "d1,10.5,20\n"
                        "d2,11,21\n"
                        "d3,12,22\n");
    REQUIRE(pm.dates.size() == 3);
    REQUIRE(pm.tickers == std::vector<std::string>{"AAA", "BBB"});
    CHECK(pm.prices(0, 0) == 10.5);
    CHECK(pm.prices(1, 1) == 21.0);
    CHECK(pm.prices(2, 1) == 22.0);
}

TEST_CASE("load_prices forward-fills gaps from the prior row") {
    auto pm = load_from("date,A,B\n"
                        "d1,1,10.0\n"
                        "d2,2,\n"
                        "d3,3,12.0\n");
    CHECK(pm.prices(0, 1) == 10.0);
    CHECK(pm.prices(1, 1) == 10.0);
    CHECK(pm.prices(2, 1) == 12.0);
}

TEST_CASE("load_prices rejects a leading gap") {
    CHECK_THROWS_AS(load_from("date,A,B\n"
                              "d1,1,\n"
                              "d2,2,10.0\n"),
                    ValidationError);
}

TEST_CASE("load_prices rejects degenerate inputs") {
    std::istringstream empty("");
    CHECK_THROWS_AS(load_prices(empty), ValidationError);
    // non-positive price
    CHECK_THROWS_AS(load_from("date,A,B\nd1,1,2\nd2,0,2\n"), ValidationError);
    CHECK_THROWS_AS(load_from("date,A,B\nd1,1,2\nd2,-3,2\n"),
                    ValidationError);
    // unparsable number
    CHECK_THROWS_AS(load_from("date,A,B\nd1,1,2\nd2,abc,2\n"),
                    ValidationError);
    // wrong field count
    CHECK_THROWS_AS(load_from("date,A,B\nd1,1,2\nd2,1\n"), ValidationError);
    // duplicate dates
    CHECK_THROWS_AS(load_from("date,A,B\nd1,1,2\nd1,1,2\n"), ValidationError);
    // single ticker
    CHECK_THROWS_AS(load_from("date,A\nd1,1\nd2,2\n"), ValidationError);
    // single row
    CHECK_THROWS_AS(load_from("date,A,B\nd1,1,2\n"), ValidationError);
}

TEST_CASE("loading complete data is the identity on values") {
    Rng rng(59);
    PriceMatrix pm;
    pm.tickers = {"AA", "BB", "CC"};
    pm.prices = Matrix(12, 3);
    for (std::size_t t = 0; t < 12; ++t) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "d%02zu", t);
        pm.dates.emplace_back(buf);
        for (std::size_t k = 0; k < 3; ++k) {
            pm.prices(t, k) = 20.0 * std::exp(rng.uniform(-1.0, 1.0));
        }
    }
    auto again = load_from(price_matrix_to_csv(pm));
    CHECK(again.dates == pm.dates);
    CHECK(again.tickers == pm.tickers);
    for (std::size_t t = 0; t < 12; ++t) {
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(again.prices(t, k) == pm.prices(t, k)); // bitwise
        }
    }
}

TEST_CASE("load_prices sorts rows by date label") {
    auto pm = load_from("date,A,B\n"
                        "d3,3,30\n"
                        "d1,1,10\n"
                        "d2,2,20\n");
    CHECK(pm.dates == std::vector<std::string>{"d1", "d2", "d3"});
    CHECK(pm.prices(0, 0) == 1.0);
    CHECK(pm.prices(2, 1) == 30.0);
}

TEST_CASE("log_returns basics") {
    PriceMatrix pm;
    pm.dates = {"d1", "d2"};
    pm.tickers = {"A", "B"};
    pm.prices = Matrix(2, 2);
    pm.prices(0, 0) = 1.0;
    pm.prices(1, 0) = std::exp(1.0);
    pm.prices(0, 1) = 100.0;
    pm.prices(1, 1) = 110.0;

    auto rm = log_returns(pm);
    REQUIRE(rm.returns.rows() == 1);
    CHECK(rm.dates == std::vector<std::string>{"d2"});
    CHECK(rm.returns(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    // ln(110/100) from an independent high-precision evaluation
    CHECK(std::abs(rm.returns(0, 1) - 0.09531017980432493) < 1e-12);
}

TEST_CASE("log_returns of a constant column is zero") {
    PriceMatrix pm;
    pm.dates = {"d1", "d2", "d3"};
    pm.tickers = {"A", "B"};
    pm.prices = Matrix(3, 2, 5.0);
    auto rm = log_returns(pm);
    for (std::size_t t = 0; t < 2; ++t) {
        CHECK(rm.returns(t, 0) == 0.0);
        CHECK(rm.returns(t, 1) == 0.0);
    }
}

TEST_CASE("price/return round trip") {
    Rng rng(11);
    PriceMatrix pm;
    pm.tickers = {"A", "B", "C"};
    const std::size_t t_count = 50;
    pm.prices = Matrix(t_count, 3);
    for (std::size_t t = 0; t < t_count; ++t) {
        pm.dates.push_back("d" + std::to_string(100 + t));
        for (std::size_t k = 0; k < 3; ++k) {
            pm.prices(t, k) = 50.0 * std::exp(rng.uniform(-0.5, 0.5));
        }
    }
    auto rm = log_returns(pm);
    for (std::size_t k = 0; k < 3; ++k) {
        double cumulative = 0.0;
        for (std::size_t t = 0; t + 1 < t_count; ++t) {
            cumulative += rm.returns(t, k);
            double rebuilt = pm.prices(0, k) * std::exp(cumulative);
            CHECK(std::abs(rebuilt - pm.prices(t + 1, k)) <=
                  1e-12 * pm.prices(t + 1, k));
        }
    }
}

TEST_CASE("make_schedule nonoverlapping") {
    auto ws = make_schedule(66, WindowScheme::NonOverlapping, 22, 0);
    REQUIRE(ws.windows.size() == 3);
    CHECK(ws.windows[0].start == 0);
    CHECK(ws.windows[0].end == 22);
    CHECK(ws.windows[1].start == 22);
    CHECK(ws.windows[2].end == 66);

    // trailing partial window discarded
    auto ws2 = make_schedule(70, WindowScheme::NonOverlapping, 22, 0);
    CHECK(ws2.windows.size() == 3);
}

TEST_CASE("make_schedule rolling") {
    auto ws = make_schedule(32, WindowScheme::Rolling, 22, 5);
    REQUIRE(ws.windows.size() == 3);
    CHECK(ws.windows[0].start == 0);
    CHECK(ws.windows[0].end == 22);
    CHECK(ws.windows[1].start == 5);
    CHECK(ws.windows[1].end == 27);
    CHECK(ws.windows[2].start == 10);
    CHECK(ws.windows[2].end == 32);
}

TEST_CASE("make_schedule rejects bad parameters") {
    CHECK_THROWS_AS(make_schedule(10, WindowScheme::NonOverlapping, 22, 0),
                    ValidationError);
    CHECK_THROWS_AS(make_schedule(10, WindowScheme::Rolling, 2, 1),
                    ValidationError);
    CHECK_THROWS_AS(make_schedule(10, WindowScheme::Rolling, 5, 0),
                    ValidationError);
}

TEST_CASE("nonoverlapping windows tile a prefix without overlap") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 10 + rng.uniform_index(200);
        std::size_t tau = 3 + rng.uniform_index(20);
        if (tau > n) continue;
        auto ws = make_schedule(n, WindowScheme::NonOverlapping, tau, 0);
        std::size_t expected_start = 0;
        for (const auto& w : ws.windows) {
            CHECK(w.start == expected_start);
            CHECK(w.end - w.start == tau);
            expected_start = w.end;
        }
        CHECK(n - expected_start < tau); // nothing left for another window
    }
}

TEST_CASE("every rolling window has exactly tau rows") {
    auto ws = make_schedule(100, WindowScheme::Rolling, 22, 5);
    for (const auto& w : ws.windows) {
        CHECK(w.end - w.start == 22);
    }
    CHECK(ws.windows.back().end <= 100);
}
