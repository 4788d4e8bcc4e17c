#pragma once

#include "matrix.hpp"
#include "rng.hpp"
#include "wavelet.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace riccinet {

// One LSTM cell plus a sigmoid forecast head. W_* act on the previous
// hidden state, U_* on the input vector, b_* are gate biases.
struct LstmParams {
    std::size_t hidden_size = 200;
    std::size_t input_size = 1;

    Matrix w_forget, w_input, w_candidate, w_output; // hidden x hidden
    Matrix u_forget, u_input, u_candidate, u_output; // hidden x input
    std::vector<double> b_forget, b_input, b_candidate, b_output;

    std::vector<double> head_weight; // hidden
    double head_bias = 0.0;

    static LstmParams zeros(std::size_t hidden, std::size_t input);
    // Uniform init in [-1/sqrt(hidden), +1/sqrt(hidden)], drawn in tensor
    // order from the given stream.
    static LstmParams init(std::size_t hidden, std::size_t input, Rng& rng);

    // All parameters as flat views, in a fixed order shared by the Adam
    // state, clipping, and the gradient check.
    std::vector<std::span<double>> tensors();
    std::vector<std::span<const double>> tensors() const;
    std::size_t parameter_count() const;
};

struct LstmState {
    std::vector<double> hidden;
    std::vector<double> cell;
};

// Single recurrence step; throws a numeric error naming the gate if any
// intermediate goes non-finite.
LstmState lstm_step(const LstmParams& p, std::span<const double> x,
                    const LstmState& prev);

// Y = sigmoid(w . h + b), the scaled one-step-ahead prediction.
double forecast_head(const LstmParams& p, std::span<const double> h);

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct TrainConfig {
    double train_fraction = 0.8;
    std::size_t max_iterations = 250;
    double learning_rate = 0.005;
    double gradient_clip = 1.0;
    std::size_t hidden_size = 200;
    AdamConfig adam;
    std::uint64_t seed = 0;
};

// Affine map fitted on the training split so its values land in [0, 1];
// required because the sigmoid head cannot emit values outside (0, 1). A
// degenerate (constant) split is padded by 0.5 either side.
struct Scaler {
    double min = 0.0;
    double max = 1.0;

    static Scaler fit(std::span<const double> values);
    double transform(double x) const { return (x - min) / (max - min); }
    double inverse(double y) const { return min + y * (max - min); }
    bool contains(double x) const { return x >= min && x <= max; }
};

struct TrainResult {
    LstmParams params;
    Scaler scaler;
    std::size_t train_count = 0;     // rows of the training split
    std::vector<double> losses;      // per-iteration training MSE
    double max_clipped_norm = 0.0;   // largest post-clip gradient norm
};

// Trains on the first train_fraction of the series: scaled value at t in,
// scaled value at t+1 out, full-sequence backpropagation through time,
// Adam updates with the global gradient norm clipped. Deterministic for a
// fixed seed.
TrainResult train(std::span<const double> series, const TrainConfig& cfg);

// Scales gradients so their global norm is at most `limit`; returns the
// post-clip norm.
double clip_global_norm(std::vector<std::span<double>> tensors, double limit);

// Max relative error between analytic gradients and central finite
// differences (step 1e-5) over every parameter. The series is used as the
// scaled training sequence directly.
double gradient_check(const LstmParams& params,
                      std::span<const double> scaled_series);

// Runs the scaled history through the recurrence and inverse-scales the
// head output: the forecast for the step right after the history.
double predict_one_step(const LstmParams& p, const Scaler& scaler,
                        std::span<const double> history);

// One pass of teacher forcing over the whole series: predictions for
// indices [first_target, series.size()), each conditioned on the true
// observed values before it.
std::vector<double> walk_forward(const LstmParams& p, const Scaler& scaler,
                                 std::span<const double> series,
                                 std::size_t first_target);

struct ForecastMetrics {
    double mae = 0.0;
    double mse = 0.0;
    std::optional<double> r2; // empty when the actuals have zero variance
};

ForecastMetrics compute_metrics(std::span<const double> predicted,
                                std::span<const double> actual);

// Forecast of one series over its test split.
struct SeriesForecast {
    std::size_t test_begin = 0;
    std::vector<double> predicted;
    std::vector<double> actual;
    ForecastMetrics metrics;
    // Test-split values outside the fitted scaler range; the sigmoid head
    // saturates there.
    std::size_t saturated_targets = 0;
};

// Plain LSTM on the raw series.
SeriesForecast lstm_forecast(std::span<const double> series,
                             const TrainConfig& cfg);

struct WdOptions {
    bool denoise = false;
    double threshold = 0.0;
    ThresholdMode mode = ThresholdMode::Soft;
};

// Hybrid model: wavelet-decompose, train one LSTM per sub-series (each on
// its own seed stream), forecast every band over the test split, and sum
// the band forecasts pointwise.
SeriesForecast wd_lstm_forecast(std::span<const double> series,
                                const WaveletSpec& spec,
                                const TrainConfig& cfg,
                                const WdOptions& options = {});

std::size_t train_split_index(std::size_t series_length,
                              double train_fraction);

} // namespace riccinet
