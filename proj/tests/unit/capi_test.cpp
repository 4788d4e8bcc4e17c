#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <riccinet.h>

#include "pipeline.hpp"
#include "text.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("riccinet_capi_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Handle {
    rn_config* cfg = nullptr;
    Handle() { REQUIRE(rn_config_create(&cfg) == RN_OK); }
    ~Handle() { rn_config_destroy(cfg); }
};

} // namespace

TEST_CASE("version and error surfaces") {
    CHECK(std::string(rn_version()) == "1.0.0");

    Handle h;
    CHECK(rn_config_set(h.cfg, "market-data.tau", "abc") ==
          RN_ERROR_VALIDATION);
    CHECK(std::string(rn_last_error_class()) == "validation");
    CHECK(std::strlen(rn_last_error_message()) > 0);

    CHECK(rn_config_set(h.cfg, "who.knows", "1") == RN_ERROR_VALIDATION);
    CHECK(rn_config_load(h.cfg, "/nonexistent/riccinet.ini") == RN_ERROR_IO);
    CHECK(std::string(rn_last_error_class()) == "io");

    // A successful call clears the error slot.
    CHECK(rn_config_set(h.cfg, "market-data.tau", "22") == RN_OK);
    CHECK(std::string(rn_last_error_message()).empty());

    CHECK(rn_config_create(nullptr) == RN_ERROR_VALIDATION);
    CHECK(rn_analyze(nullptr, nullptr, nullptr) == RN_ERROR_VALIDATION);
}

TEST_CASE("config get/set/save/load through the C surface") {
    TempDir tmp;
    Handle h;
    char buf[128];

    REQUIRE(rn_config_get(h.cfg, "market-data.tau", buf, sizeof buf) ==
            RN_OK);
    CHECK(std::string(buf) == "22");

    REQUIRE(rn_config_set(h.cfg, "network.theta", "0.6") == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "cli.seed", "17") == RN_OK);

    auto ini = (tmp.path / "cfg.ini").string();
    REQUIRE(rn_config_save(h.cfg, ini.c_str()) == RN_OK);

    Handle other;
    REQUIRE(rn_config_load(other.cfg, ini.c_str()) == RN_OK);
    REQUIRE(rn_config_get(other.cfg, "network.theta", buf, sizeof buf) ==
            RN_OK);
    CHECK(std::string(buf) == "0.6");
    REQUIRE(rn_config_get(other.cfg, "cli.seed", buf, sizeof buf) == RN_OK);
    CHECK(std::string(buf) == "17");

    // Truncation keeps the NUL terminator.
    char tiny[3];
    REQUIRE(rn_config_get(h.cfg, "network.theta", tiny, sizeof tiny) ==
            RN_OK);
    CHECK(std::string(tiny) == "0.");
}

TEST_CASE("pipeline end to end through the C API") {
    TempDir tmp;
    auto prices = (tmp.path / "prices.csv").string();
    auto out = (tmp.path / "out").string();

    REQUIRE(rn_synth(prices.c_str(), 12, 140, 40, 30, 3) == RN_OK);
    CHECK(fs::exists(prices));

    Handle h;
    REQUIRE(rn_config_set(h.cfg, "cli.out", out.c_str()) == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "forecaster.hidden_size", "4") == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "forecaster.max_iterations", "5") == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "wavelet.levels", "3") == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "curvature.kinds", "or,fr") == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "forecaster.baseline", "true") == RN_OK);
    REQUIRE(rn_config_set(h.cfg, "cli.seed", "7") == RN_OK);

    REQUIRE(rn_analyze(h.cfg, prices.c_str(), nullptr) == RN_OK);
    auto curve_csv = fs::path(out) / "curvature.csv";
    REQUIRE(fs::exists(curve_csv));
    // (139 returns - tau 22) / delta 5 + 1 = 24 windows
    auto series = riccinet::curvature_series_from_csv(
        riccinet::read_file(curve_csv));
    CHECK(series.size() == 24);

    REQUIRE(rn_forecast(h.cfg, nullptr, nullptr) == RN_OK);
    CHECK(fs::exists(fs::path(out) / "forecast_wdlstm.json"));
    CHECK(fs::exists(fs::path(out) / "forecast_lstm.json"));
    CHECK(fs::exists(fs::path(out) / "forecast_or_wdlstm.csv"));
    CHECK(fs::exists(fs::path(out) / "decomposition_fr.csv"));

    char* text = nullptr;
    REQUIRE(rn_report(out.c_str(), &text) == RN_OK);
    REQUIRE(text != nullptr);
    std::string table(text);
    rn_string_free(text);
    CHECK(table.find("Model: WD-LSTM") != std::string::npos);
    CHECK(table.find("Model: LSTM") != std::string::npos);
    CHECK(table.find("MAE") != std::string::npos);
    CHECK(fs::exists(fs::path(out) / "report.csv"));
    // Columns track the requested kinds, canonical order.
    std::string report_csv = riccinet::read_file(fs::path(out) /
                                                 "report.csv");
    CHECK(report_csv.rfind("model,metric,OR,FR\n", 0) == 0);

    // Missing artifacts are their own error class.
    fs::path empty_dir = tmp.path / "empty";
    fs::create_directories(empty_dir);
    CHECK(rn_report(empty_dir.string().c_str(), nullptr) == RN_ERROR_IO);
    CHECK(std::string(rn_last_error_class()) == "missing-artifact");

    // Unreadable input surfaces as io.
    CHECK(rn_analyze(h.cfg, "/nonexistent/prices.csv", nullptr) ==
          RN_ERROR_IO);
    CHECK(std::string(rn_last_error_class()) == "io");
}

TEST_CASE("forecast rejects short series with the too-short class") {
    TempDir tmp;
    auto csv = tmp.path / "short.csv";
    std::string text = "window_end_date,or,fr,mr,hr\n";
    for (int i = 0; i < 10; ++i) {
        text += "d" + std::to_string(10 + i) + ",0.1,0.2,0.3,0.4\n";
    }
    riccinet::write_file_atomic(csv, text);

    Handle h;
    REQUIRE(rn_config_set(h.cfg, "cli.out", (tmp.path / "out").string()
                                                .c_str()) == RN_OK);
    CHECK(rn_forecast(h.cfg, csv.string().c_str(), nullptr) ==
          RN_ERROR_VALIDATION);
    CHECK(std::string(rn_last_error_class()) == "too-short");
}
