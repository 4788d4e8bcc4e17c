#include "market_data.hpp"

#include "errors.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

namespace riccinet {

namespace {

struct RawRow {
    std::string date;
    std::vector<std::optional<double>> cells;
};

} // namespace

PriceMatrix load_prices(std::istream& source) {
    std::string line;
    if (!std::getline(source, line)) {
        throw ValidationError("empty price stream: missing header row");
    }

    auto header = split(trim(line), ',');
    if (header.size() < 3) {
        throw ValidationError(
            "price header must name a date column and at least two tickers");
    }
    std::vector<std::string> tickers;
    tickers.reserve(header.size() - 1);
    for (std::size_t i = 1; i < header.size(); ++i) {
        std::string name(trim(header[i]));
        if (name.empty()) {
            throw ValidationError("empty ticker name in header column " +
                                  std::to_string(i + 1));
        }
        tickers.push_back(std::move(name));
    }
    const std::size_t n = tickers.size();

    std::vector<RawRow> rows;
    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        auto fields = split(sv, ',');
        if (fields.size() != n + 1) {
            throw ValidationError("line " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) +
                                  " fields, expected " +
                                  std::to_string(n + 1));
        }
        RawRow row;
        row.date = std::string(trim(fields[0]));
        if (row.date.empty()) {
            throw ValidationError("empty date on line " +
                                  std::to_string(line_no));
        }
        row.cells.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::string_view cell = trim(fields[k + 1]);
            if (cell.empty()) {
                row.cells.emplace_back(std::nullopt);
            } else {
                double v = parse_double(
                    cell, "price for " + tickers[k] + " on " + row.date);
                row.cells.emplace_back(v);
            }
        }
        rows.push_back(std::move(row));
    }

    if (rows.size() < 2) {
        throw ValidationError("need at least 2 price rows, got " +
                              std::to_string(rows.size()));
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawRow& a, const RawRow& b) {
                         return a.date < b.date;
                     });
    for (std::size_t t = 1; t < rows.size(); ++t) {
        if (rows[t].date == rows[t - 1].date) {
            throw ValidationError("duplicate date " + rows[t].date);
        }
    }

    PriceMatrix pm;
    pm.tickers = std::move(tickers);
    pm.dates.reserve(rows.size());
    pm.prices = Matrix(rows.size(), n);

    for (std::size_t k = 0; k < n; ++k) {
        if (!rows[0].cells[k].has_value()) {
            throw ValidationError("unfillable leading gap: " +
                                  pm.tickers[k] + " has no price on " +
                                  rows[0].date);
        }
    }
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t k = 0; k < n; ++k) {
            double value = rows[t].cells[k].has_value()
                               ? *rows[t].cells[k]
                               : pm.prices(t - 1, k); // forward fill
            if (!(value > 0.0) || !std::isfinite(value)) {
                throw ValidationError("non-positive price " +
                                      format_double(value) + " for " +
                                      pm.tickers[k] + " on " + rows[t].date);
            }
            pm.prices(t, k) = value;
        }
    }
    for (auto& row : rows) pm.dates.push_back(std::move(row.date));
    return pm;
}

PriceMatrix load_prices_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open price file: " + path.string());
    }
    return load_prices(in);
}

ReturnMatrix log_returns(const PriceMatrix& pm) {
    const std::size_t t_count = pm.prices.rows();
    const std::size_t n = pm.prices.cols();
    ReturnMatrix rm;
    rm.tickers = pm.tickers;
    rm.dates.assign(pm.dates.begin() + 1, pm.dates.end());
    rm.returns = Matrix(t_count - 1, n);
    for (std::size_t t = 0; t + 1 < t_count; ++t) {
        for (std::size_t k = 0; k < n; ++k) {
            rm.returns(t, k) =
                std::log(pm.prices(t + 1, k)) - std::log(pm.prices(t, k));
        }
    }
    return rm;
}

WindowSchedule make_schedule(std::size_t n_returns, WindowScheme scheme,
                             std::size_t tau, std::size_t delta) {
    if (tau < 3) {
        throw ValidationError(
            "window length tau must be at least 3 (correlation over fewer "
            "points is degenerate), got " +
            std::to_string(tau));
    }
    if (tau > n_returns) {
        throw ValidationError("window length " + std::to_string(tau) +
                              " exceeds the " + std::to_string(n_returns) +
                              " available return rows");
    }
    WindowSchedule ws;
    ws.scheme = scheme;
    ws.tau = tau;
    ws.delta = delta;
    if (scheme == WindowScheme::NonOverlapping) {
        for (std::size_t start = 0; start + tau <= n_returns; start += tau) {
            ws.windows.push_back({start, start + tau});
        }
    } else {
        if (delta < 1) {
            throw ValidationError("rolling shift delta must be >= 1");
        }
        for (std::size_t end = tau; end <= n_returns; end += delta) {
            ws.windows.push_back({end - tau, end});
        }
    }
    return ws;
}

const char* window_scheme_name(WindowScheme scheme) {
    return scheme == WindowScheme::NonOverlapping ? "nonoverlapping"
                                                  : "rolling";
}

WindowScheme parse_window_scheme(std::string_view name) {
    if (name == "nonoverlapping") return WindowScheme::NonOverlapping;
    if (name == "rolling") return WindowScheme::Rolling;
    throw ValidationError("unknown window scheme '" + std::string(name) +
                          "' (expected nonoverlapping or rolling)");
}

} // namespace riccinet
