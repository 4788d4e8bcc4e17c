#include "synth.hpp"

#include "errors.hpp"
#include "rng.hpp"

#include <cmath>
#include <cstdio>

namespace riccinet {

PriceMatrix synth_prices(const SynthConfig& cfg) {
    if (cfg.n_stocks < 2 || cfg.n_days < 2) {
        throw ValidationError("synthetic data needs at least 2 stocks and "
                              "2 days");
    }

    const std::size_t n = cfg.n_stocks;
    const std::size_t n_returns = cfg.n_days - 1;

    Rng loading_rng(derive_seed(cfg.seed, "synth/loadings"));
    std::vector<double> jitter(n);
    for (auto& j : jitter) {
        j = loading_rng.uniform(1.0 - cfg.loading_jitter,
                                1.0 + cfg.loading_jitter);
    }

    Rng factor_rng(derive_seed(cfg.seed, "synth/factor"));
    Rng noise_rng(derive_seed(cfg.seed, "synth/noise"));

    PriceMatrix pm;
    pm.prices = Matrix(cfg.n_days, n);
    pm.dates.reserve(cfg.n_days);
    pm.tickers.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "S%03zu", k);
        pm.tickers.emplace_back(buf);
    }
    for (std::size_t t = 0; t < cfg.n_days; ++t) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "D%05zu", t + 1);
        pm.dates.emplace_back(buf);
    }

    for (std::size_t k = 0; k < n; ++k) pm.prices(0, k) = 100.0;
    for (std::size_t t = 0; t < n_returns; ++t) {
        bool in_regime = t >= cfg.regime_start &&
                         t < cfg.regime_start + cfg.regime_length;
        double loading = in_regime ? cfg.regime_loading : cfg.base_loading;
        double factor = factor_rng.normal();
        for (std::size_t k = 0; k < n; ++k) {
            double ret = cfg.daily_vol *
                         (loading * jitter[k] * factor +
                          cfg.idiosyncratic_sigma * noise_rng.normal());
            pm.prices(t + 1, k) = pm.prices(t, k) * std::exp(ret);
        }
    }
    return pm;
}

} // namespace riccinet
