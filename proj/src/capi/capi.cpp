#include "riccinet.h"

#include "config.hpp"
#include "errors.hpp"
#include "pipeline.hpp"
#include "synth.hpp"

#include <cstring>
#include <exception>
#include <new>
#include <string>

struct rn_config {
    riccinet::Config cfg;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_class;

rn_status record_error(const std::exception& e) {
    if (const auto* err = dynamic_cast<const riccinet::Error*>(&e)) {
        g_error_message = err->what();
        g_error_class = err->error_class();
        return static_cast<rn_status>(err->exit_code());
    }
    g_error_message = e.what();
    g_error_class = "numeric";
    return RN_ERROR_NUMERIC;
}

template <typename Fn>
rn_status guarded(Fn&& fn) {
    try {
        fn();
        g_error_message.clear();
        g_error_class.clear();
        return RN_OK;
    } catch (const std::exception& e) {
        return record_error(e);
    } catch (...) {
        g_error_message = "unknown failure";
        g_error_class = "numeric";
        return RN_ERROR_NUMERIC;
    }
}

rn_status require(bool ok, const char* message) {
    if (ok) return RN_OK;
    g_error_message = message;
    g_error_class = "validation";
    return RN_ERROR_VALIDATION;
}

} // namespace

extern "C" {

const char* rn_version(void) { return "1.0.0"; }

const char* rn_last_error_message(void) { return g_error_message.c_str(); }

const char* rn_last_error_class(void) { return g_error_class.c_str(); }

rn_status rn_config_create(rn_config** out) {
    if (rn_status s = require(out != nullptr, "out handle is null"); s != RN_OK)
        return s;
    *out = new (std::nothrow) rn_config{};
    return require(*out != nullptr, "allocation failed");
}

void rn_config_destroy(rn_config* cfg) { delete cfg; }

rn_status rn_config_load(rn_config* cfg, const char* path) {
    if (rn_status s = require(cfg && path, "null argument"); s != RN_OK)
        return s;
    return guarded([&] { cfg->cfg = riccinet::Config::load(path); });
}

rn_status rn_config_save(const rn_config* cfg, const char* path) {
    if (rn_status s = require(cfg && path, "null argument"); s != RN_OK)
        return s;
    return guarded([&] { cfg->cfg.save(path); });
}

rn_status rn_config_set(rn_config* cfg, const char* key, const char* value) {
    if (rn_status s = require(cfg && key && value, "null argument");
        s != RN_OK)
        return s;
    return guarded([&] { cfg->cfg.set(key, value); });
}

rn_status rn_config_get(const rn_config* cfg, const char* key, char* buf,
                        size_t buflen) {
    if (rn_status s = require(cfg && key && buf && buflen > 0,
                              "null argument");
        s != RN_OK)
        return s;
    return guarded([&] {
        std::string value = cfg->cfg.get(key);
        std::size_t n = std::min(buflen - 1, value.size());
        std::memcpy(buf, value.data(), n);
        buf[n] = '\0';
    });
}

rn_status rn_analyze(const rn_config* cfg, const char* prices_csv,
                     const char* out_dir) {
    if (rn_status s = require(cfg != nullptr, "null config"); s != RN_OK)
        return s;
    return guarded([&] {
        std::string prices = prices_csv ? prices_csv : cfg->cfg.input;
        if (prices.empty()) {
            throw riccinet::ValidationError(
                "no price CSV given (argument or market-data.input)");
        }
        std::string out = out_dir ? out_dir : cfg->cfg.out;
        riccinet::run_analyze(cfg->cfg, prices, out);
    });
}

rn_status rn_forecast(const rn_config* cfg, const char* series_csv,
                      const char* out_dir) {
    if (rn_status s = require(cfg != nullptr, "null config"); s != RN_OK)
        return s;
    return guarded([&] {
        std::string out = out_dir ? out_dir : cfg->cfg.out;
        std::string series =
            series_csv ? series_csv
                       : (std::filesystem::path(out) / "curvature.csv")
                             .string();
        riccinet::run_forecast(cfg->cfg, series, out);
    });
}

rn_status rn_report(const char* dir, char** out_text) {
    if (rn_status s = require(dir != nullptr, "null directory"); s != RN_OK)
        return s;
    return guarded([&] {
        std::string text = riccinet::run_report(dir);
        if (out_text) {
            char* copy = new char[text.size() + 1];
            std::memcpy(copy, text.data(), text.size() + 1);
            *out_text = copy;
        }
    });
}

rn_status rn_synth(const char* out_csv, size_t n_stocks, size_t n_days,
                   size_t regime_start, size_t regime_length,
                   uint64_t seed) {
    if (rn_status s = require(out_csv != nullptr, "null output path");
        s != RN_OK)
        return s;
    return guarded([&] {
        riccinet::SynthConfig synth;
        if (n_stocks > 0) synth.n_stocks = n_stocks;
        if (n_days > 0) synth.n_days = n_days;
        synth.regime_start = regime_start;
        synth.regime_length = regime_length;
        synth.seed = seed;
        riccinet::run_synth(synth, out_csv);
    });
}

void rn_string_free(char* s) { delete[] s; }

} // extern "C"
