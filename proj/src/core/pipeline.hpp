#pragma once

#include "config.hpp"
#include "curvature.hpp"
#include "forecaster.hpp"
#include "market_data.hpp"
#include "network.hpp"
#include "synth.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace riccinet {

// One threshold network per schedule window, averaged into four aligned
// curvature series. Windows are independent and computed concurrently;
// failures carry the window end date.
CurvatureSeries compute_curvature_series(const ReturnMatrix& returns,
                                         const WindowSchedule& schedule,
                                         double theta,
                                         const CurvatureOptions& opts);

// CSV: header `window_end_date,or,fr,mr,hr`, one row per window, values in
// shortest round-trip form.
std::string curvature_series_to_csv(const CurvatureSeries& series);
CurvatureSeries curvature_series_from_csv(std::string_view text);

// Edge list dump for one window: a JSON header line with tickers and theta,
// then `i j c_ij d_ij origin` per edge.
std::string network_dump(const ThresholdNetwork& net,
                         std::span<const std::string> tickers,
                         const std::string& window_end_date);

// Selects the series of one curvature kind.
std::span<const double> series_of_kind(const CurvatureSeries& series,
                                       CurvatureKind kind);

// analyze: prices CSV -> curvature.csv (+ optional networks/ dumps).
// Returns the computed series.
CurvatureSeries run_analyze(const Config& cfg,
                            const std::filesystem::path& prices_path,
                            const std::filesystem::path& out_dir);

// forecast: curvature.csv -> forecast_wdlstm.json (+ forecast_lstm.json
// with the baseline flag), per-kind plot CSVs, per-kind decomposition CSVs.
struct ForecastOutputs {
    std::map<std::string, SeriesForecast> wd;       // by kind name
    std::map<std::string, SeriesForecast> baseline; // empty unless enabled
};
ForecastOutputs run_forecast(const Config& cfg,
                             const std::filesystem::path& series_path,
                             const std::filesystem::path& out_dir);

// report: forecast JSONs -> report.csv + aligned text table (returned).
std::string run_report(const std::filesystem::path& dir);

// synth: writes a one-factor demo price CSV.
void run_synth(const SynthConfig& cfg, const std::filesystem::path& out_csv);

std::string price_matrix_to_csv(const PriceMatrix& pm);

} // namespace riccinet
