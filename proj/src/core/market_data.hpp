#pragma once

#include "matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace riccinet {

// Dates x tickers grid of adjusted closing prices, gap-filled. Dates are
// opaque ordered labels; rows are sorted ascending by label and every cell
// is strictly positive once loading completes.
struct PriceMatrix {
    std::vector<std::string> dates;   // length T, strictly increasing
    std::vector<std::string> tickers; // length N
    Matrix prices;                    // T x N
};

// Log returns: returns(t, k) = ln prices(t+1, k) - ln prices(t, k). Row t
// carries the date label of the later price row.
struct ReturnMatrix {
    std::vector<std::string> dates;   // length T-1
    std::vector<std::string> tickers; // length N
    Matrix returns;                   // (T-1) x N
};

enum class WindowScheme { NonOverlapping, Rolling };

// Half-open row range [start, end) into ReturnMatrix rows.
struct Window {
    std::size_t start = 0;
    std::size_t end = 0;
};

struct WindowSchedule {
    WindowScheme scheme = WindowScheme::NonOverlapping;
    std::size_t tau = 0;
    std::size_t delta = 0; // Rolling only
    std::vector<Window> windows;
};

// Parses a price CSV: header `date,TICKER1,TICKER2,...`, one row per trading
// day, empty field = missing. Missing cells are forward-filled from the most
// recent prior row of the same column; a gap in the first data row is a hard
// error because no prior value exists.
PriceMatrix load_prices(std::istream& source);
PriceMatrix load_prices_file(const std::filesystem::path& path);

ReturnMatrix log_returns(const PriceMatrix& pm);

// NonOverlapping: windows [0,tau), [tau,2tau), ... Rolling: the first window
// ends at tau and each subsequent end advances by delta. Trailing partial
// windows are discarded.
WindowSchedule make_schedule(std::size_t n_returns, WindowScheme scheme,
                             std::size_t tau, std::size_t delta);

const char* window_scheme_name(WindowScheme scheme);
WindowScheme parse_window_scheme(std::string_view name);

} // namespace riccinet
