// Command-line front end over the riccinet C API.
//
//   riccinet synth demo.csv
//   riccinet analyze demo.csv --out out --dump-networks
//   riccinet forecast out/curvature.csv --out out --baseline
//   riccinet report out

#include <riccinet.h>

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace {

struct ConfigHandle {
    rn_config* ptr = nullptr;
    ConfigHandle() { rn_config_create(&ptr); }
    ~ConfigHandle() { rn_config_destroy(ptr); }
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
};

int fail(rn_status status) {
    std::fprintf(stderr, "error[%s]: %s\n", rn_last_error_class(),
                 rn_last_error_message());
    return static_cast<int>(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Market stability via discrete Ricci curvature on "
                 "correlation threshold networks, with a wavelet + LSTM "
                 "forecaster"};
    app.require_subcommand(1);
    app.fallthrough(); // let subcommands use top-level flags like --config
    app.set_version_flag("--version", std::string(rn_version()));

    std::string config_path;
    app.add_option("--config", config_path, "Config file (INI)")
        ->envname("RICCINET_CONFIG");

    // Every flag override maps onto one config key; values are validated by
    // the library when set.
    std::vector<std::pair<const char*, std::string>> overrides;
    auto add_override = [&](CLI::App* cmd, const char* flag, const char* key,
                            const char* help) {
        auto value = std::make_shared<std::string>();
        cmd->add_option_function<std::string>(
               flag,
               [&overrides, key](const std::string& v) {
                   overrides.emplace_back(key, v);
               },
               help)
            ->expected(1);
    };
    auto add_toggle = [&](CLI::App* cmd, const char* flag, const char* key,
                          const char* help) {
        cmd->add_flag_callback(
            flag,
            [&overrides, key] { overrides.emplace_back(key, "true"); },
            help);
    };

    auto* analyze = app.add_subcommand(
        "analyze", "Prices CSV -> per-window curvature series CSV");
    std::string prices_path;
    analyze->add_option("prices", prices_path,
                        "Price CSV (default: market-data.input)");
    auto* forecast = app.add_subcommand(
        "forecast", "Curvature CSV -> forecast JSON + plot CSVs");
    std::string series_path;
    forecast->add_option("series", series_path,
                         "Curvature CSV (default: <out>/curvature.csv)");
    auto* report = app.add_subcommand(
        "report", "Summarize forecast metrics as a table");
    std::string report_dir;
    report->add_option("dir", report_dir,
                       "Directory with forecast JSONs (default: cli.out)");
    auto* synth = app.add_subcommand(
        "synth", "Write a synthetic one-factor price CSV");
    std::string synth_out = "prices.csv";
    synth->add_option("output", synth_out, "Output CSV path");
    std::size_t synth_stocks = 40, synth_days = 1200;
    std::size_t regime_start = 594, regime_length = 66;
    std::uint64_t synth_seed = 7;
    synth->add_option("--stocks", synth_stocks, "Number of stocks");
    synth->add_option("--days", synth_days, "Number of trading days");
    synth->add_option("--regime-start", regime_start,
                      "First return row of the high-correlation regime");
    synth->add_option("--regime-length", regime_length,
                      "Regime length in return rows (0 disables)");
    synth->add_option("--seed", synth_seed, "Generator seed");

    for (auto* cmd : {analyze, forecast}) {
        add_override(cmd, "--tau", "market-data.tau",
                     "Window length in trading days");
        add_override(cmd, "--delta", "market-data.delta",
                     "Rolling shift in trading days");
        add_override(cmd, "--scheme", "market-data.scheme",
                     "nonoverlapping | rolling");
        add_override(cmd, "--theta", "network.theta",
                     "Correlation threshold");
        add_override(cmd, "--curvatures", "curvature.kinds",
                     "Comma list from or,fr,mr,hr");
        add_override(cmd, "--levels", "wavelet.levels",
                     "Wavelet decomposition levels");
        add_override(cmd, "--wavelet", "wavelet.family",
                     "Wavelet family (haar, db2, db4)");
        add_toggle(cmd, "--denoise", "wavelet.denoise",
                   "Threshold detail coefficients before use");
        add_override(cmd, "--threshold", "wavelet.threshold",
                     "Denoise threshold");
        add_override(cmd, "--mode", "wavelet.mode", "soft | hard");
        add_override(cmd, "--seed", "cli.seed", "Top-level seed");
        add_override(cmd, "--out", "cli.out", "Output directory");
    }
    add_toggle(forecast, "--baseline", "forecaster.baseline",
               "Also run the plain LSTM baseline");
    add_toggle(analyze, "--dump-networks", "cli.dump_networks",
               "Write per-window edge lists under <out>/networks/");
    add_override(report, "--out", "cli.out", "Output directory");

    CLI11_PARSE(app, argc, argv);

    ConfigHandle cfg;
    if (!cfg.ptr) {
        std::fprintf(stderr, "error[numeric]: cannot allocate config\n");
        return RN_ERROR_NUMERIC;
    }
    if (!config_path.empty()) {
        if (rn_status s = rn_config_load(cfg.ptr, config_path.c_str());
            s != RN_OK) {
            return fail(s);
        }
    }
    for (const auto& [key, value] : overrides) {
        if (rn_status s = rn_config_set(cfg.ptr, key, value.c_str());
            s != RN_OK) {
            return fail(s);
        }
    }

    char out_buf[512];
    if (analyze->parsed()) {
        rn_status s = rn_analyze(cfg.ptr,
                                 prices_path.empty() ? nullptr
                                                     : prices_path.c_str(),
                                 nullptr);
        if (s != RN_OK) return fail(s);
        if (rn_config_get(cfg.ptr, "cli.out", out_buf, sizeof out_buf) ==
            RN_OK) {
            std::printf("wrote %s/curvature.csv\n", out_buf);
        }
        return 0;
    }
    if (forecast->parsed()) {
        rn_status s = rn_forecast(cfg.ptr,
                                  series_path.empty() ? nullptr
                                                      : series_path.c_str(),
                                  nullptr);
        if (s != RN_OK) return fail(s);
        if (rn_config_get(cfg.ptr, "cli.out", out_buf, sizeof out_buf) ==
            RN_OK) {
            std::printf("wrote forecast artifacts under %s\n", out_buf);
        }
        return 0;
    }
    if (report->parsed()) {
        std::string dir = report_dir;
        if (dir.empty()) {
            if (rn_config_get(cfg.ptr, "cli.out", out_buf, sizeof out_buf) !=
                RN_OK) {
                return fail(RN_ERROR_VALIDATION);
            }
            dir = out_buf;
        }
        char* text = nullptr;
        rn_status s = rn_report(dir.c_str(), &text);
        if (s != RN_OK) return fail(s);
        std::fputs(text, stdout);
        rn_string_free(text);
        return 0;
    }
    if (synth->parsed()) {
        rn_status s = rn_synth(synth_out.c_str(), synth_stocks, synth_days,
                               regime_start, regime_length, synth_seed);
        if (s != RN_OK) return fail(s);
        std::printf("wrote %s\n", synth_out.c_str());
        return 0;
    }
    return 0;
}
