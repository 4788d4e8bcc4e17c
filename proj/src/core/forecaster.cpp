#include "forecaster.hpp"

#include "errors.hpp"
#include "parallel.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riccinet {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_finite(std::span<const double> v, const char* gate) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw NumericError(std::string(gate) +
                               " gate produced a non-finite value");
        }
    }
}

// pre = W h_prev + U x + b
void gate_preactivation(const Matrix& w, const Matrix& u,
                        const std::vector<double>& b,
                        std::span<const double> h_prev,
                        std::span<const double> x, std::span<double> pre) {
    const std::size_t hidden = b.size();
    for (std::size_t i = 0; i < hidden; ++i) {
        double acc = b[i];
        auto wrow = w.row(i);
        for (std::size_t j = 0; j < h_prev.size(); ++j) {
            acc += wrow[j] * h_prev[j];
        }
        auto urow = u.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) {
            acc += urow[j] * x[j];
        }
        pre[i] = acc;
    }
}

struct StepWork {
    std::vector<double> f, i, a, o, cell, tanh_cell, hidden;
    explicit StepWork(std::size_t h)
        : f(h), i(h), a(h), o(h), cell(h), tanh_cell(h), hidden(h) {}
};

void run_step(const LstmParams& p, std::span<const double> x,
              std::span<const double> h_prev, std::span<const double> c_prev,
              StepWork& out) {
    const std::size_t hidden = p.hidden_size;
    gate_preactivation(p.w_forget, p.u_forget, p.b_forget, h_prev, x, out.f);
    gate_preactivation(p.w_input, p.u_input, p.b_input, h_prev, x, out.i);
    gate_preactivation(p.w_candidate, p.u_candidate, p.b_candidate, h_prev, x,
                       out.a);
    gate_preactivation(p.w_output, p.u_output, p.b_output, h_prev, x, out.o);
    for (std::size_t k = 0; k < hidden; ++k) {
        out.f[k] = sigmoid(out.f[k]);
        out.i[k] = sigmoid(out.i[k]);
        out.a[k] = std::tanh(out.a[k]);
        out.o[k] = sigmoid(out.o[k]);
        out.cell[k] = c_prev[k] * out.f[k] + out.a[k] * out.i[k];
        out.tanh_cell[k] = std::tanh(out.cell[k]);
        out.hidden[k] = out.o[k] * out.tanh_cell[k];
    }
}

void validate_train_config(const TrainConfig& cfg) {
    if (!(cfg.train_fraction > 0.0) || !(cfg.train_fraction < 1.0)) {
        throw ValidationError("train fraction must lie in (0, 1), got " +
                              format_double(cfg.train_fraction));
    }
    if (cfg.hidden_size < 1) {
        throw ValidationError("hidden size must be at least 1");
    }
    if (cfg.max_iterations < 1) {
        throw ValidationError("max iterations must be at least 1");
    }
    if (!(cfg.learning_rate > 0.0)) {
        throw ValidationError("learning rate must be positive");
    }
    if (!(cfg.gradient_clip > 0.0)) {
        throw ValidationError("gradient clip must be positive");
    }
}

// Teacher-forced forward pass over (inputs, targets); caches everything the
// backward pass needs. Rows of the caches are time steps.
struct SequenceCache {
    Matrix f, i, a, o, cell, tanh_cell, hidden;
    std::vector<double> outputs;

    SequenceCache(std::size_t steps, std::size_t h)
        : f(steps, h), i(steps, h), a(steps, h), o(steps, h), cell(steps, h),
          tanh_cell(steps, h), hidden(steps, h), outputs(steps, 0.0) {}
};

double forward_sequence(const LstmParams& p, std::span<const double> inputs,
                        std::span<const double> targets,
                        SequenceCache& cache) {
    const std::size_t steps = inputs.size();
    const std::size_t hidden = p.hidden_size;
    StepWork work(hidden);
    std::vector<double> h_prev(hidden, 0.0), c_prev(hidden, 0.0);
    double loss = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        double x = inputs[t];
        run_step(p, {&x, 1}, h_prev, c_prev, work);
        std::copy(work.f.begin(), work.f.end(), cache.f.row(t).begin());
        std::copy(work.i.begin(), work.i.end(), cache.i.row(t).begin());
        std::copy(work.a.begin(), work.a.end(), cache.a.row(t).begin());
        std::copy(work.o.begin(), work.o.end(), cache.o.row(t).begin());
        std::copy(work.cell.begin(), work.cell.end(),
                  cache.cell.row(t).begin());
        std::copy(work.tanh_cell.begin(), work.tanh_cell.end(),
                  cache.tanh_cell.row(t).begin());
        std::copy(work.hidden.begin(), work.hidden.end(),
                  cache.hidden.row(t).begin());
        double y = forecast_head(p, work.hidden);
        cache.outputs[t] = y;
        double err = y - targets[t];
        loss += err * err;
        h_prev = work.hidden;
        c_prev = work.cell;
    }
    return loss / static_cast<double>(steps);
}

void backward_sequence(const LstmParams& p, std::span<const double> inputs,
                       std::span<const double> targets,
                       const SequenceCache& cache, LstmParams& grads) {
    const std::size_t steps = inputs.size();
    const std::size_t hidden = p.hidden_size;

    std::vector<double> dh_next(hidden, 0.0), dc_next(hidden, 0.0);
    std::vector<double> dh(hidden), dc(hidden);
    std::vector<double> dz_f(hidden), dz_i(hidden), dz_a(hidden),
        dz_o(hidden);

    for (std::size_t t = steps; t-- > 0;) {
        auto f = cache.f.row(t);
        auto ig = cache.i.row(t);
        auto a = cache.a.row(t);
        auto o = cache.o.row(t);
        auto tc = cache.tanh_cell.row(t);
        auto h = cache.hidden.row(t);

        double y = cache.outputs[t];
        double dy = 2.0 * (y - targets[t]) / static_cast<double>(steps);
        double dz_head = dy * y * (1.0 - y);
        grads.head_bias += dz_head;
        for (std::size_t k = 0; k < hidden; ++k) {
            grads.head_weight[k] += dz_head * h[k];
            dh[k] = dz_head * p.head_weight[k] + dh_next[k];
        }

        for (std::size_t k = 0; k < hidden; ++k) {
            double do_k = dh[k] * tc[k];
            dz_o[k] = do_k * o[k] * (1.0 - o[k]);
            dc[k] = dh[k] * o[k] * (1.0 - tc[k] * tc[k]) + dc_next[k];
        }

        const double* c_prev =
            t > 0 ? cache.cell.row(t - 1).data() : nullptr;
        for (std::size_t k = 0; k < hidden; ++k) {
            double cp = c_prev ? c_prev[k] : 0.0;
            double df = dc[k] * cp;
            double di = dc[k] * a[k];
            double da = dc[k] * ig[k];
            dz_f[k] = df * f[k] * (1.0 - f[k]);
            dz_i[k] = di * ig[k] * (1.0 - ig[k]);
            dz_a[k] = da * (1.0 - a[k] * a[k]);
            dc_next[k] = dc[k] * f[k];
        }

        const double* h_prev =
            t > 0 ? cache.hidden.row(t - 1).data() : nullptr;
        double x = inputs[t];
        std::fill(dh_next.begin(), dh_next.end(), 0.0);

        auto accumulate_gate = [&](const Matrix& w, Matrix& gw, Matrix& gu,
                                   std::vector<double>& gb,
                                   const std::vector<double>& dz) {
            for (std::size_t k = 0; k < hidden; ++k) {
                double coeff = dz[k];
                gb[k] += coeff;
                gu(k, 0) += coeff * x;
                auto gw_row = gw.row(k);
                auto w_row = w.row(k);
                if (h_prev) {
                    for (std::size_t j = 0; j < hidden; ++j) {
                        gw_row[j] += coeff * h_prev[j];
                        dh_next[j] += coeff * w_row[j];
                    }
                } else {
                    for (std::size_t j = 0; j < hidden; ++j) {
                        dh_next[j] += coeff * w_row[j];
                    }
                }
            }
        };
        accumulate_gate(p.w_forget, grads.w_forget, grads.u_forget,
                        grads.b_forget, dz_f);
        accumulate_gate(p.w_input, grads.w_input, grads.u_input,
                        grads.b_input, dz_i);
        accumulate_gate(p.w_candidate, grads.w_candidate, grads.u_candidate,
                        grads.b_candidate, dz_a);
        accumulate_gate(p.w_output, grads.w_output, grads.u_output,
                        grads.b_output, dz_o);
    }
}

void adam_update(LstmParams& params, LstmParams& grads,
                 std::vector<double>& moment1, std::vector<double>& moment2,
                 std::size_t step, const TrainConfig& cfg) {
    auto p_views = params.tensors();
    auto g_views = grads.tensors();
    const double b1 = cfg.adam.beta1;
    const double b2 = cfg.adam.beta2;
    double bias1 = 1.0 - std::pow(b1, static_cast<double>(step));
    double bias2 = 1.0 - std::pow(b2, static_cast<double>(step));
    std::size_t offset = 0;
    for (std::size_t v = 0; v < p_views.size(); ++v) {
        auto pv = p_views[v];
        auto gv = g_views[v];
        for (std::size_t k = 0; k < pv.size(); ++k, ++offset) {
            double g = gv[k];
            moment1[offset] = b1 * moment1[offset] + (1.0 - b1) * g;
            moment2[offset] = b2 * moment2[offset] + (1.0 - b2) * g * g;
            double m_hat = moment1[offset] / bias1;
            double v_hat = moment2[offset] / bias2;
            pv[k] -= cfg.learning_rate * m_hat /
                     (std::sqrt(v_hat) + cfg.adam.epsilon);
        }
    }
}

} // namespace

LstmParams LstmParams::zeros(std::size_t hidden, std::size_t input) {
    LstmParams p;
    p.hidden_size = hidden;
    p.input_size = input;
    p.w_forget = Matrix(hidden, hidden);
    p.w_input = Matrix(hidden, hidden);
    p.w_candidate = Matrix(hidden, hidden);
    p.w_output = Matrix(hidden, hidden);
    p.u_forget = Matrix(hidden, input);
    p.u_input = Matrix(hidden, input);
    p.u_candidate = Matrix(hidden, input);
    p.u_output = Matrix(hidden, input);
    p.b_forget.assign(hidden, 0.0);
    p.b_input.assign(hidden, 0.0);
    p.b_candidate.assign(hidden, 0.0);
    p.b_output.assign(hidden, 0.0);
    p.head_weight.assign(hidden, 0.0);
    p.head_bias = 0.0;
    return p;
}

LstmParams LstmParams::init(std::size_t hidden, std::size_t input, Rng& rng) {
    LstmParams p = zeros(hidden, input);
    double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (auto view : p.tensors()) {
        for (double& x : view) x = rng.uniform(-bound, bound);
    }
    return p;
}

std::vector<std::span<double>> LstmParams::tensors() {
    return {
        {w_forget.data().data(), w_forget.data().size()},
        {w_input.data().data(), w_input.data().size()},
        {w_candidate.data().data(), w_candidate.data().size()},
        {w_output.data().data(), w_output.data().size()},
        {u_forget.data().data(), u_forget.data().size()},
        {u_input.data().data(), u_input.data().size()},
        {u_candidate.data().data(), u_candidate.data().size()},
        {u_output.data().data(), u_output.data().size()},
        {b_forget.data(), b_forget.size()},
        {b_input.data(), b_input.size()},
        {b_candidate.data(), b_candidate.size()},
        {b_output.data(), b_output.size()},
        {head_weight.data(), head_weight.size()},
        {&head_bias, 1},
    };
}

std::vector<std::span<const double>> LstmParams::tensors() const {
    auto views = const_cast<LstmParams*>(this)->tensors();
    return {views.begin(), views.end()};
}

std::size_t LstmParams::parameter_count() const {
    std::size_t total = 0;
    for (auto view : tensors()) total += view.size();
    return total;
}

LstmState lstm_step(const LstmParams& p, std::span<const double> x,
                    const LstmState& prev) {
    if (x.size() != p.input_size) {
        throw ValidationError("input vector has size " +
                              std::to_string(x.size()) + ", expected " +
                              std::to_string(p.input_size));
    }
    if (prev.hidden.size() != p.hidden_size ||
        prev.cell.size() != p.hidden_size) {
        throw ValidationError("state size does not match hidden size");
    }
    StepWork work(p.hidden_size);
    run_step(p, x, prev.hidden, prev.cell, work);
    check_finite(work.f, "forget");
    check_finite(work.i, "input");
    check_finite(work.a, "candidate");
    check_finite(work.o, "output");
    check_finite(work.cell, "cell");
    return {std::move(work.hidden), std::move(work.cell)};
}

double forecast_head(const LstmParams& p, std::span<const double> h) {
    if (h.size() != p.hidden_size) {
        throw ValidationError("hidden state has size " +
                              std::to_string(h.size()) + ", expected " +
                              std::to_string(p.hidden_size));
    }
    double acc = p.head_bias;
    for (std::size_t k = 0; k < h.size(); ++k) {
        acc += p.head_weight[k] * h[k];
    }
    return sigmoid(acc);
}

Scaler Scaler::fit(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("cannot fit a scaler on an empty split");
    }
    double lo = values[0], hi = values[0];
    for (double x : values) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    return Scaler{lo, hi};
}

double clip_global_norm(std::vector<std::span<double>> tensors,
                        double limit) {
    double sumsq = 0.0;
    for (auto view : tensors) {
        for (double g : view) sumsq += g * g;
    }
    double norm = std::sqrt(sumsq);
    if (norm > limit && norm > 0.0) {
        double scale = limit / norm;
        for (auto view : tensors) {
            for (double& g : view) g *= scale;
        }
        return limit;
    }
    return norm;
}

std::size_t train_split_index(std::size_t series_length,
                              double train_fraction) {
    auto idx = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(series_length)));
    return std::min(idx, series_length);
}

TrainResult train(std::span<const double> series, const TrainConfig& cfg) {
    validate_train_config(cfg);
    if (series.size() < 20) {
        throw TooShortError("training needs a series of at least 20 points, "
                            "got " +
                            std::to_string(series.size()));
    }
    for (double x : series) {
        if (!std::isfinite(x)) {
            throw ValidationError("series contains a non-finite value");
        }
    }

    const std::size_t n_train = train_split_index(series.size(),
                                                  cfg.train_fraction);
    if (n_train < 2) {
        throw TooShortError("training split has fewer than 2 points");
    }

    TrainResult result;
    result.train_count = n_train;
    result.scaler = Scaler::fit(series.subspan(0, n_train));

    const std::size_t steps = n_train - 1;
    std::vector<double> inputs(steps), targets(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        inputs[t] = result.scaler.transform(series[t]);
        targets[t] = result.scaler.transform(series[t + 1]);
    }

    Rng rng(derive_seed(cfg.seed, "lstm-init"));
    result.params = LstmParams::init(cfg.hidden_size, 1, rng);
    LstmParams grads = LstmParams::zeros(cfg.hidden_size, 1);

    std::vector<double> moment1(result.params.parameter_count(), 0.0);
    std::vector<double> moment2(moment1.size(), 0.0);
    SequenceCache cache(steps, cfg.hidden_size);

    result.losses.reserve(cfg.max_iterations);
    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        double loss = forward_sequence(result.params, inputs, targets, cache);
        if (!std::isfinite(loss)) {
            throw NumericError("training diverged at iteration " +
                               std::to_string(iter) +
                               ": loss is non-finite");
        }
        result.losses.push_back(loss);

        for (auto view : grads.tensors()) {
            std::fill(view.begin(), view.end(), 0.0);
        }
        backward_sequence(result.params, inputs, targets, cache, grads);
        double post_norm = clip_global_norm(grads.tensors(),
                                            cfg.gradient_clip);
        result.max_clipped_norm = std::max(result.max_clipped_norm,
                                           post_norm);
        adam_update(result.params, grads, moment1, moment2, iter, cfg);
    }
    return result;
}

double gradient_check(const LstmParams& params,
                      std::span<const double> scaled_series) {
    if (scaled_series.size() < 2) {
        throw ValidationError("gradient check needs at least 2 points");
    }
    const std::size_t steps = scaled_series.size() - 1;
    std::vector<double> inputs(scaled_series.begin(),
                               scaled_series.end() - 1);
    std::vector<double> targets(scaled_series.begin() + 1,
                                scaled_series.end());

    LstmParams work = params;
    SequenceCache cache(steps, params.hidden_size);
    LstmParams grads = LstmParams::zeros(params.hidden_size,
                                         params.input_size);
    forward_sequence(work, inputs, targets, cache);
    backward_sequence(work, inputs, targets, cache, grads);

    auto loss_at = [&]() {
        SequenceCache scratch(steps, params.hidden_size);
        return forward_sequence(work, inputs, targets, scratch);
    };

    const double step = 1e-5;
    double worst = 0.0;
    auto p_views = work.tensors();
    auto g_views = grads.tensors();
    for (std::size_t v = 0; v < p_views.size(); ++v) {
        for (std::size_t k = 0; k < p_views[v].size(); ++k) {
            double saved = p_views[v][k];
            p_views[v][k] = saved + step;
            double up = loss_at();
            p_views[v][k] = saved - step;
            double down = loss_at();
            p_views[v][k] = saved;
            double numeric = (up - down) / (2.0 * step);
            double analytic = g_views[v][k];
            double denom = std::max({std::abs(numeric), std::abs(analytic),
                                     1e-6});
            worst = std::max(worst, std::abs(numeric - analytic) / denom);
        }
    }
    return worst;
}

double predict_one_step(const LstmParams& p, const Scaler& scaler,
                        std::span<const double> history) {
    if (history.empty()) {
        throw ValidationError("prediction needs a nonempty history");
    }
    StepWork work(p.hidden_size);
    std::vector<double> h(p.hidden_size, 0.0), c(p.hidden_size, 0.0);
    for (double raw : history) {
        double x = scaler.transform(raw);
        run_step(p, {&x, 1}, h, c, work);
        h = work.hidden;
        c = work.cell;
    }
    return scaler.inverse(forecast_head(p, h));
}

std::vector<double> walk_forward(const LstmParams& p, const Scaler& scaler,
                                 std::span<const double> series,
                                 std::size_t first_target) {
    if (first_target < 1 || first_target >= series.size()) {
        throw ValidationError("walk-forward target range is empty");
    }
    std::vector<double> predictions;
    predictions.reserve(series.size() - first_target);
    StepWork work(p.hidden_size);
    std::vector<double> h(p.hidden_size, 0.0), c(p.hidden_size, 0.0);
    for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        double x = scaler.transform(series[t]);
        run_step(p, {&x, 1}, h, c, work);
        h = work.hidden;
        c = work.cell;
        if (t + 1 >= first_target) {
            predictions.push_back(scaler.inverse(forecast_head(p, h)));
        }
    }
    return predictions;
}

ForecastMetrics compute_metrics(std::span<const double> predicted,
                                std::span<const double> actual) {
    if (predicted.size() != actual.size() || predicted.empty()) {
        throw ValidationError("metrics need equal nonzero-length arrays");
    }
    const std::size_t n = predicted.size();
    ForecastMetrics m;
    double rss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double err = predicted[k] - actual[k];
        m.mae += std::abs(err);
        rss += err * err;
    }
    m.mae /= static_cast<double>(n);
    m.mse = rss / static_cast<double>(n);

    double mean = std::accumulate(actual.begin(), actual.end(), 0.0) /
                  static_cast<double>(n);
    double tss = 0.0;
    for (double a : actual) tss += (a - mean) * (a - mean);
    double noise = 2.3e-16 * (1.0 + std::abs(mean));
    if (tss > static_cast<double>(n) * noise * noise) {
        m.r2 = 1.0 - rss / tss;
    }
    return m;
}

SeriesForecast lstm_forecast(std::span<const double> series,
                             const TrainConfig& cfg) {
    TrainResult trained = train(series, cfg);
    const std::size_t n_train = trained.train_count;
    if (n_train >= series.size()) {
        throw TooShortError("test split is empty");
    }

    SeriesForecast out;
    out.test_begin = n_train;
    out.predicted = walk_forward(trained.params, trained.scaler, series,
                                 n_train);
    out.actual.assign(series.begin() + static_cast<long>(n_train),
                      series.end());
    for (double a : out.actual) {
        if (!trained.scaler.contains(a)) ++out.saturated_targets;
    }
    out.metrics = compute_metrics(out.predicted, out.actual);
    return out;
}

SeriesForecast wd_lstm_forecast(std::span<const double> series,
                                const WaveletSpec& spec,
                                const TrainConfig& cfg,
                                const WdOptions& options) {
    WaveletDecomposition dec = dwt_multilevel(series, spec);
    if (options.denoise) {
        dec = denoise(dec, options.threshold, options.mode);
    }

    std::vector<std::pair<std::string, const std::vector<double>*>> bands;
    bands.emplace_back("approx", &dec.approximation);
    for (std::size_t j = 0; j < dec.details.size(); ++j) {
        bands.emplace_back("d" + std::to_string(j + 1), &dec.details[j]);
    }

    const std::size_t n_train = train_split_index(series.size(),
                                                  cfg.train_fraction);
    if (n_train >= series.size()) {
        throw TooShortError("test split is empty");
    }
    const std::size_t test_len = series.size() - n_train;

    std::vector<std::vector<double>> band_predictions(bands.size());
    std::vector<std::size_t> band_saturated(bands.size(), 0);

    parallel_for(bands.size(), [&](std::size_t b) {
        const auto& [name, data] = bands[b];
        TrainConfig band_cfg = cfg;
        band_cfg.seed = derive_seed(cfg.seed, "band/" + name);
        try {
            TrainResult trained = train(*data, band_cfg);
            band_predictions[b] = walk_forward(trained.params, trained.scaler,
                                               *data, n_train);
            for (std::size_t k = n_train; k < data->size(); ++k) {
                if (!trained.scaler.contains((*data)[k])) {
                    ++band_saturated[b];
                }
            }
        } catch (const Error& e) {
            throw Error(e.error_class(), e.exit_code(),
                        "sub-series " + name + ": " + e.what());
        }
    });

    SeriesForecast out;
    out.test_begin = n_train;
    out.predicted.assign(test_len, 0.0);
    for (const auto& preds : band_predictions) {
        for (std::size_t k = 0; k < test_len; ++k) {
            out.predicted[k] += preds[k];
        }
    }
    out.actual.assign(series.begin() + static_cast<long>(n_train),
                      series.end());
    out.saturated_targets = std::accumulate(band_saturated.begin(),
                                            band_saturated.end(),
                                            std::size_t{0});
    out.metrics = compute_metrics(out.predicted, out.actual);
    return out;
}

} // namespace riccinet
