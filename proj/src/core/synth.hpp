#pragma once

#include "market_data.hpp"

#include <cstdint>

namespace riccinet {

// One-factor return model for demo and test data: every stock loads on a
// common factor plus idiosyncratic noise. During the injected regime the
// loading jumps, which lifts the mean pairwise correlation (defaults:
// about 0.3 normally, about 0.8 inside the regime).
struct SynthConfig {
    std::size_t n_stocks = 40;
    std::size_t n_days = 1200;
    // sqrt(3/7): loading^2 / (loading^2 + sigma^2) = 0.3 with sigma = 1.
    double base_loading = 0.6546536707079771;
    double regime_loading = 2.0; // correlation 4/5
    double idiosyncratic_sigma = 1.0;
    double loading_jitter = 0.1; // per-stock multiplier in [1-j, 1+j]
    double daily_vol = 0.01;     // scales returns to ~1% per day
    // Regime position measured in return rows [start, start + length).
    std::size_t regime_start = 594;
    std::size_t regime_length = 66;
    std::uint64_t seed = 7;
};

PriceMatrix synth_prices(const SynthConfig& cfg);

} // namespace riccinet
