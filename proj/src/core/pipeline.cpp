#include "pipeline.hpp"

#include "errors.hpp"
#include "parallel.hpp"
#include "text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace riccinet {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string window_end_date(const ReturnMatrix& returns, const Window& w) {
    return returns.dates[w.end - 1];
}

} // namespace

CurvatureSeries compute_curvature_series(const ReturnMatrix& returns,
                                         const WindowSchedule& schedule,
                                         double theta,
                                         const CurvatureOptions& opts) {
    const std::size_t count = schedule.windows.size();
    CurvatureSeries series;
    series.window_end_dates.resize(count);
    series.ollivier.resize(count);
    series.forman.resize(count);
    series.menger.resize(count);
    series.haantjes.resize(count);

    parallel_for(count, [&](std::size_t w) {
        const Window& window = schedule.windows[w];
        std::string date = window_end_date(returns, window);
        try {
            CorrMatrix c = pearson_matrix(returns.returns, window.start,
                                          window.end, returns.tickers);
            DistMatrix d = distance_matrix(c);
            ThresholdNetwork net = threshold_network(c, d, theta);
            CurvatureAverages avg = average_curvatures(net.graph, opts);
            series.window_end_dates[w] = std::move(date);
            series.ollivier[w] = avg.ollivier;
            series.forman[w] = avg.forman;
            series.menger[w] = avg.menger;
            series.haantjes[w] = avg.haantjes;
        } catch (const Error& e) {
            throw Error(e.error_class(), e.exit_code(),
                        "window ending " + date + ": " + e.what());
        }
    });
    return series;
}

std::string curvature_series_to_csv(const CurvatureSeries& series) {
    std::ostringstream out;
    out << "window_end_date,or,fr,mr,hr\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.window_end_dates[i] << ','
            << format_double(series.ollivier[i]) << ','
            << format_double(series.forman[i]) << ','
            << format_double(series.menger[i]) << ','
            << format_double(series.haantjes[i]) << '\n';
    }
    return std::move(out).str();
}

CurvatureSeries curvature_series_from_csv(std::string_view text) {
    CurvatureSeries series;
    bool saw_header = false;
    std::size_t line_no = 0;
    for (auto raw_line : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw_line);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "window_end_date,or,fr,mr,hr") {
                throw ValidationError(
                    "unexpected curvature CSV header: " + std::string(line));
            }
            saw_header = true;
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() != 5) {
            throw ValidationError("curvature CSV line " +
                                  std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) +
                                  " fields, expected 5");
        }
        std::string ctx = "curvature CSV line " + std::to_string(line_no);
        series.window_end_dates.emplace_back(trim(fields[0]));
        series.ollivier.push_back(parse_double(fields[1], ctx));
        series.forman.push_back(parse_double(fields[2], ctx));
        series.menger.push_back(parse_double(fields[3], ctx));
        series.haantjes.push_back(parse_double(fields[4], ctx));
    }
    if (!saw_header) {
        throw ValidationError("curvature CSV is empty");
    }
    return series;
}

std::string network_dump(const ThresholdNetwork& net,
                         std::span<const std::string> tickers,
                         const std::string& window_end_date) {
    ordered_json header;
    header["window_end_date"] = window_end_date;
    header["n_nodes"] = net.graph.node_count();
    header["n_edges"] = net.edges.size();
    header["theta"] = net.theta;
    header["tickers"] = std::vector<std::string>(tickers.begin(),
                                                 tickers.end());
    std::ostringstream out;
    out << header.dump() << '\n';
    for (const auto& e : net.edges) {
        out << e.u << ' ' << e.v << ' ' << format_double(e.correlation)
            << ' ' << format_double(e.distance) << ' '
            << edge_origin_name(e.origin) << '\n';
    }
    return std::move(out).str();
}

std::span<const double> series_of_kind(const CurvatureSeries& series,
                                       CurvatureKind kind) {
    switch (kind) {
    case CurvatureKind::Ollivier: return series.ollivier;
    case CurvatureKind::Forman: return series.forman;
    case CurvatureKind::Menger: return series.menger;
    case CurvatureKind::Haantjes: return series.haantjes;
    }
    throw ValidationError("bad curvature kind");
}

CurvatureSeries run_analyze(const Config& cfg,
                            const std::filesystem::path& prices_path,
                            const std::filesystem::path& out_dir) {
    PriceMatrix pm = load_prices_file(prices_path);
    ReturnMatrix rm = log_returns(pm);
    WindowSchedule schedule = make_schedule(rm.returns.rows(), cfg.scheme,
                                            cfg.tau, cfg.delta);

    CurvatureSeries series = compute_curvature_series(
        rm, schedule, cfg.theta, cfg.curvature_options());
    write_file_atomic(out_dir / "curvature.csv",
                      curvature_series_to_csv(series));

    if (cfg.dump_networks) {
        parallel_for(schedule.windows.size(), [&](std::size_t w) {
            const Window& window = schedule.windows[w];
            CorrMatrix c = pearson_matrix(rm.returns, window.start,
                                          window.end, rm.tickers);
            DistMatrix d = distance_matrix(c);
            ThresholdNetwork net = threshold_network(c, d, cfg.theta);
            std::string date = rm.dates[window.end - 1];
            write_file_atomic(out_dir / "networks" / (date + ".edges"),
                              network_dump(net, rm.tickers, date));
        });
    }
    return series;
}

namespace {

ordered_json metrics_to_json(const ForecastMetrics& m) {
    ordered_json j;
    j["mae"] = m.mae;
    j["mse"] = m.mse;
    if (m.r2.has_value()) {
        j["r2"] = *m.r2;
    } else {
        j["r2"] = nullptr;
    }
    return j;
}

ordered_json config_echo(const Config& cfg) {
    ordered_json j;
    j["seed"] = cfg.seed;
    j["wavelet"] = {{"family", cfg.wavelet_family},
                    {"levels", cfg.wavelet_levels},
                    {"denoise", cfg.denoise},
                    {"threshold", cfg.denoise_threshold},
                    {"mode", threshold_mode_name(cfg.denoise_mode)}};
    j["train"] = {{"train_fraction", cfg.train_fraction},
                  {"max_iterations", cfg.max_iterations},
                  {"learning_rate", cfg.learning_rate},
                  {"gradient_clip", cfg.gradient_clip},
                  {"hidden_size", cfg.hidden_size},
                  {"adam_beta1", cfg.adam_beta1},
                  {"adam_beta2", cfg.adam_beta2},
                  {"adam_epsilon", cfg.adam_epsilon}};
    return j;
}

ordered_json forecast_to_json(const SeriesForecast& f,
                              std::span<const std::string> dates) {
    ordered_json j;
    j["dates"] = std::vector<std::string>(
        dates.begin() + static_cast<long>(f.test_begin), dates.end());
    j["actual"] = f.actual;
    j["predicted"] = f.predicted;
    j["metrics"] = metrics_to_json(f.metrics);
    j["saturated_targets"] = f.saturated_targets;
    return j;
}

std::string forecast_csv(const SeriesForecast& f,
                         std::span<const std::string> dates) {
    std::ostringstream out;
    out << "date,actual,predicted\n";
    for (std::size_t k = 0; k < f.predicted.size(); ++k) {
        out << dates[f.test_begin + k] << ',' << format_double(f.actual[k])
            << ',' << format_double(f.predicted[k]) << '\n';
    }
    return std::move(out).str();
}

std::string decomposition_csv(const WaveletDecomposition& dec) {
    std::ostringstream out;
    out << "t,approx";
    for (std::size_t j = 0; j < dec.levels; ++j) {
        out << ",d" << (j + 1);
    }
    out << '\n';
    for (std::size_t t = 0; t < dec.original_length; ++t) {
        out << t << ',' << format_double(dec.approximation[t]);
        for (const auto& band : dec.details) {
            out << ',' << format_double(band[t]);
        }
        out << '\n';
    }
    return std::move(out).str();
}

std::string model_file_tag(const std::string& model) {
    return model == "WD-LSTM" ? "wdlstm" : "lstm";
}

} // namespace

ForecastOutputs run_forecast(const Config& cfg,
                             const std::filesystem::path& series_path,
                             const std::filesystem::path& out_dir) {
    CurvatureSeries series =
        curvature_series_from_csv(read_file(series_path));
    const std::size_t min_rows = std::size_t{1} << cfg.wavelet_levels;
    if (series.size() < min_rows) {
        throw TooShortError("curvature series has " +
                            std::to_string(series.size()) +
                            " rows; need at least " +
                            std::to_string(min_rows) + " for " +
                            std::to_string(cfg.wavelet_levels) +
                            " wavelet levels");
    }

    WaveletSpec spec = cfg.wavelet_spec();
    TrainConfig base_train = cfg.train_config();
    WdOptions wd_opts = cfg.wd_options();

    struct Task {
        CurvatureKind kind;
        bool is_baseline;
    };
    std::vector<Task> tasks;
    for (auto kind : cfg.kinds) {
        tasks.push_back({kind, false});
        if (cfg.baseline) tasks.push_back({kind, true});
    }

    ForecastOutputs outputs;
    std::vector<SeriesForecast> results(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        const Task& task = tasks[i];
        const char* kind_name = curvature_kind_name(task.kind);
        auto data = series_of_kind(series, task.kind);
        TrainConfig train_cfg = base_train;
        try {
            if (task.is_baseline) {
                train_cfg.seed = derive_seed(
                    cfg.seed, std::string("forecast/lstm/") + kind_name);
                results[i] = lstm_forecast(data, train_cfg);
            } else {
                train_cfg.seed = derive_seed(
                    cfg.seed, std::string("forecast/wdlstm/") + kind_name);
                results[i] = wd_lstm_forecast(data, spec, train_cfg, wd_opts);
            }
        } catch (const Error& e) {
            throw Error(e.error_class(), e.exit_code(),
                        std::string(kind_name) + " forecast: " + e.what());
        }
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].is_baseline) {
            outputs.baseline[curvature_kind_name(tasks[i].kind)] =
                std::move(results[i]);
        } else {
            outputs.wd[curvature_kind_name(tasks[i].kind)] =
                std::move(results[i]);
        }
    }

    auto write_model_json = [&](const std::string& model,
                                const std::map<std::string, SeriesForecast>&
                                    by_kind) {
        ordered_json j;
        j["model"] = model;
        j["config"] = config_echo(cfg);
        ordered_json kinds_json;
        for (auto kind : cfg.kinds) {
            const char* name = curvature_kind_name(kind);
            auto it = by_kind.find(name);
            if (it == by_kind.end()) continue;
            kinds_json[name] =
                forecast_to_json(it->second, series.window_end_dates);
            write_file_atomic(out_dir / ("forecast_" + std::string(name) +
                                         "_" + model_file_tag(model) +
                                         ".csv"),
                              forecast_csv(it->second,
                                           series.window_end_dates));
        }
        j["kinds"] = kinds_json;
        write_file_atomic(out_dir / ("forecast_" + model_file_tag(model) +
                                     ".json"),
                          j.dump(2) + "\n");
    };
    write_model_json("WD-LSTM", outputs.wd);
    if (cfg.baseline) write_model_json("LSTM", outputs.baseline);

    // Per-kind decomposition dump (the sub-series the hybrid model trains
    // on), one CSV per curvature kind.
    for (auto kind : cfg.kinds) {
        auto data = series_of_kind(series, kind);
        WaveletDecomposition dec = dwt_multilevel(data, spec);
        if (wd_opts.denoise) {
            dec = denoise(dec, wd_opts.threshold, wd_opts.mode);
        }
        write_file_atomic(out_dir / ("decomposition_" +
                                     std::string(curvature_kind_name(kind)) +
                                     ".csv"),
                          decomposition_csv(dec));
    }
    return outputs;
}

namespace {

struct ReportBlock {
    std::string model;
    std::vector<std::string> kind_labels;
    std::vector<ForecastMetrics> metrics;
};

ReportBlock read_forecast_json(const std::filesystem::path& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("cannot parse " + path.string() + ": " +
                              e.what());
    }
    ReportBlock block;
    block.model = j.at("model").get<std::string>();
    // Canonical column order: OR, MR, HR, FR.
    static const std::vector<std::string> order = {"or", "mr", "hr", "fr"};
    const auto& kinds = j.at("kinds");
    for (const auto& name : order) {
        if (!kinds.contains(name)) continue;
        const auto& metrics = kinds.at(name).at("metrics");
        ForecastMetrics m;
        m.mae = metrics.at("mae").get<double>();
        m.mse = metrics.at("mse").get<double>();
        if (!metrics.at("r2").is_null()) {
            m.r2 = metrics.at("r2").get<double>();
        }
        block.kind_labels.push_back(
            curvature_kind_label(parse_curvature_kind(name)));
        block.metrics.push_back(m);
    }
    return block;
}

std::string fixed_width(const std::string& s, std::size_t width) {
    if (s.size() >= width) return " " + s;
    return std::string(width - s.size(), ' ') + s;
}

std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string run_report(const std::filesystem::path& dir) {
    std::vector<ReportBlock> blocks;
    for (const char* name : {"forecast_wdlstm.json", "forecast_lstm.json"}) {
        auto path = dir / name;
        if (std::filesystem::exists(path)) {
            blocks.push_back(read_forecast_json(path));
        }
    }
    if (blocks.empty()) {
        throw MissingArtifactError("no forecast JSON found in " +
                                   dir.string());
    }

    static const char* row_names[3] = {"MAE", "MSE", "R2"};
    std::ostringstream csv;
    csv << "model,metric";
    // Header uses the union in canonical order; blocks normally agree.
    for (const auto& label : blocks.front().kind_labels) {
        csv << ',' << label;
    }
    csv << '\n';

    std::ostringstream text;
    for (const auto& block : blocks) {
        text << "Model: " << block.model << "\n";
        text << fixed_width("", 6);
        for (const auto& label : block.kind_labels) {
            text << fixed_width(label, 13);
        }
        text << "\n";
        for (int row = 0; row < 3; ++row) {
            csv << block.model << ',' << row_names[row];
            text << fixed_width(row_names[row], 6);
            for (const auto& m : block.metrics) {
                std::string cell;
                if (row == 0) {
                    cell = format_double(m.mae);
                } else if (row == 1) {
                    cell = format_double(m.mse);
                } else {
                    cell = m.r2.has_value() ? format_double(*m.r2)
                                            : std::string();
                }
                csv << ',' << cell;

                std::string shown;
                if (row == 0) {
                    shown = short_double(m.mae);
                } else if (row == 1) {
                    shown = short_double(m.mse);
                } else {
                    shown = m.r2.has_value() ? short_double(*m.r2) : "n/a";
                }
                text << fixed_width(shown, 13);
            }
            csv << '\n';
            text << "\n";
        }
        text << "\n";
    }
    write_file_atomic(dir / "report.csv", csv.str());
    return std::move(text).str();
}

void run_synth(const SynthConfig& cfg,
               const std::filesystem::path& out_csv) {
    PriceMatrix pm = synth_prices(cfg);
    write_file_atomic(out_csv, price_matrix_to_csv(pm));
}

std::string price_matrix_to_csv(const PriceMatrix& pm) {
    std::ostringstream out;
    out << "date";
    for (const auto& ticker : pm.tickers) out << ',' << ticker;
    out << '\n';
    for (std::size_t t = 0; t < pm.prices.rows(); ++t) {
        out << pm.dates[t];
        for (std::size_t k = 0; k < pm.prices.cols(); ++k) {
            out << ',' << format_double(pm.prices(t, k));
        }
        out << '\n';
    }
    return std::move(out).str();
}

} // namespace riccinet
