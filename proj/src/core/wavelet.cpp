#include "wavelet.hpp"

#include "errors.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace riccinet {

namespace {

// Scaling (lowpass) coefficients, normalized to unit energy with sum
// sqrt(2). The highpass mate is derived by the quadrature mirror rule.
const std::vector<double>& scaling_coefficients(std::string_view family) {
    static const std::vector<double> haar = {
        0.7071067811865476, 0.7071067811865476};
    static const std::vector<double> db2 = {
        0.4829629131445341, 0.8365163037378077, 0.2241438680420134,
        -0.12940952255126034};
    static const std::vector<double> db4 = {
        0.23037781330885523, 0.7148465705525415, 0.6308807679295904,
        -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
        0.032883011666982945, -0.010597401784997278};
    if (family == "haar" || family == "db1") return haar;
    if (family == "db2") return db2;
    if (family == "db4") return db4;
    throw ValidationError("unknown wavelet family '" + std::string(family) +
                          "' (supported: haar, db2, db4)");
}

void check_orthogonality(const std::vector<double>& h) {
    const std::size_t f = h.size();
    double sum = 0.0;
    for (double x : h) sum += x;
    if (std::abs(sum - std::sqrt(2.0)) > 1e-10) {
        throw NumericError("lowpass filter sum is " + format_double(sum) +
                           ", expected sqrt(2)");
    }
    for (std::size_t shift = 0; 2 * shift < f; ++shift) {
        double dot = 0.0;
        for (std::size_t i = 0; i + 2 * shift < f; ++i) {
            dot += h[i] * h[i + 2 * shift];
        }
        double expected = shift == 0 ? 1.0 : 0.0;
        if (std::abs(dot - expected) > 1e-10) {
            throw NumericError("filter shift-" + std::to_string(2 * shift) +
                               " autocorrelation is " + format_double(dot));
        }
    }
}

// Half-sample symmetric extension: index -1 mirrors 0, index n mirrors
// n - 1.
double extended_sample(std::span<const double> x, long i) {
    long n = static_cast<long>(x.size());
    if (i < 0) i = -1 - i;
    if (i >= n) i = 2 * n - 1 - i;
    // A second fold is enough for the filter lengths in use (F - 2 < n is
    // not guaranteed at deep levels, so fold until inside).
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return x[static_cast<std::size_t>(i)];
}

// Coefficient k covers samples [2k, 2k + F). Coefficients are kept for
// k in [-k0, floor((n - 1) / 2)] with k0 = floor((F - 1) / 2); every basis
// function overlapping [0, n) is then present, which is exactly what the
// truncated synthesis needs for perfect reconstruction.
std::size_t boundary_shift(std::size_t filter_len) {
    return (filter_len - 1) / 2;
}

std::size_t coeff_count(std::size_t n, std::size_t filter_len) {
    return (n - 1) / 2 + boundary_shift(filter_len) + 1;
}

void analyze_one(std::span<const double> x, const std::vector<double>& h,
                 const std::vector<double>& g, std::vector<double>& approx,
                 std::vector<double>& detail) {
    const std::size_t f = h.size();
    const long k0 = static_cast<long>(boundary_shift(f));
    const std::size_t count = coeff_count(x.size(), f);
    approx.assign(count, 0.0);
    detail.assign(count, 0.0);
    for (std::size_t c = 0; c < count; ++c) {
        long k = static_cast<long>(c) - k0;
        double a = 0.0, d = 0.0;
        for (std::size_t m = 0; m < f; ++m) {
            double sample = extended_sample(x, 2 * k + static_cast<long>(m));
            a += sample * h[m];
            d += sample * g[m];
        }
        approx[c] = a;
        detail[c] = d;
    }
}

void synth_add(std::span<const double> coeffs, const std::vector<double>& q,
               std::size_t k0, std::vector<double>& out) {
    const std::size_t f = q.size();
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        long k = static_cast<long>(c) - static_cast<long>(k0);
        double value = coeffs[c];
        if (value == 0.0) continue;
        for (std::size_t m = 0; m < f; ++m) {
            long idx = 2 * k + static_cast<long>(m);
            if (idx >= 0 && idx < static_cast<long>(out.size())) {
                out[static_cast<std::size_t>(idx)] += value * q[m];
            }
        }
    }
}

std::vector<double> synthesize_one(std::span<const double> approx,
                                   std::span<const double> detail,
                                   const std::vector<double>& h,
                                   const std::vector<double>& g,
                                   std::size_t out_len) {
    std::vector<double> out(out_len, 0.0);
    std::size_t k0 = boundary_shift(h.size());
    synth_add(approx, h, k0, out);
    synth_add(detail, g, k0, out);
    return out;
}

// Inverse transform of a full coefficient set down to the original length.
std::vector<double> inverse_all(const WaveletSpec& spec,
                                std::span<const double> approx,
                                const std::vector<std::vector<double>>& details,
                                const std::vector<std::size_t>& lengths) {
    std::vector<double> current(approx.begin(), approx.end());
    for (std::size_t level = details.size(); level > 0; --level) {
        current = synthesize_one(current, details[level - 1], spec.lowpass(),
                                 spec.highpass(), lengths[level - 1]);
    }
    return current;
}

std::vector<std::size_t> level_lengths(std::size_t original,
                                       std::size_t levels,
                                       std::size_t filter_len) {
    // lengths[j] = length of the level-j input, j = 0 is the series itself.
    std::vector<std::size_t> lengths(levels);
    std::size_t n = original;
    for (std::size_t j = 0; j < levels; ++j) {
        lengths[j] = n;
        n = coeff_count(n, filter_len);
    }
    return lengths;
}

void rebuild_subseries(const WaveletSpec& spec, WaveletDecomposition& dec) {
    auto lengths = level_lengths(dec.original_length, dec.levels,
                                 spec.lowpass().size());
    std::vector<std::vector<double>> zero_details(dec.levels);
    for (std::size_t j = 0; j < dec.levels; ++j) {
        zero_details[j].assign(dec.detail_coeffs[j].size(), 0.0);
    }

    std::vector<double> zero_approx(dec.approx_coeffs.size(), 0.0);
    dec.approximation =
        inverse_all(spec, dec.approx_coeffs, zero_details, lengths);

    dec.details.assign(dec.levels, {});
    for (std::size_t j = 0; j < dec.levels; ++j) {
        zero_details[j] = dec.detail_coeffs[j];
        dec.details[j] =
            inverse_all(spec, zero_approx, zero_details, lengths);
        zero_details[j].assign(dec.detail_coeffs[j].size(), 0.0);
    }
}

} // namespace

WaveletSpec WaveletSpec::make(std::string_view family, std::size_t levels) {
    if (levels < 1) {
        throw ValidationError("decomposition needs at least 1 level");
    }
    WaveletSpec spec;
    spec.family_ = std::string(family);
    spec.levels_ = levels;
    spec.lowpass_ = scaling_coefficients(family);
    check_orthogonality(spec.lowpass_);
    const std::size_t f = spec.lowpass_.size();
    spec.highpass_.resize(f);
    for (std::size_t i = 0; i < f; ++i) {
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        spec.highpass_[i] = sign * spec.lowpass_[f - 1 - i];
    }
    return spec;
}

WaveletDecomposition dwt_multilevel(std::span<const double> series,
                                    const WaveletSpec& spec) {
    const std::size_t n = series.size();
    std::size_t min_len = std::size_t{1} << spec.levels();
    if (n < min_len) {
        throw TooShortError("series of length " + std::to_string(n) +
                            " is too short for " +
                            std::to_string(spec.levels()) +
                            " decomposition levels (need at least " +
                            std::to_string(min_len) + ")");
    }
    for (double x : series) {
        if (!std::isfinite(x)) {
            throw ValidationError("series contains a non-finite value");
        }
    }

    WaveletDecomposition dec;
    dec.family = spec.family();
    dec.levels = spec.levels();
    dec.original_length = n;
    dec.detail_coeffs.resize(spec.levels());

    std::vector<double> current(series.begin(), series.end());
    for (std::size_t j = 0; j < spec.levels(); ++j) {
        std::vector<double> approx, detail;
        analyze_one(current, spec.lowpass(), spec.highpass(), approx, detail);
        dec.detail_coeffs[j] = std::move(detail);
        current = std::move(approx);
    }
    dec.approx_coeffs = std::move(current);

    rebuild_subseries(spec, dec);
    return dec;
}

std::vector<double> reconstruct(const WaveletDecomposition& dec) {
    std::vector<double> out(dec.approximation.begin(),
                            dec.approximation.end());
    out.resize(dec.original_length, 0.0);
    for (const auto& band : dec.details) {
        for (std::size_t i = 0; i < dec.original_length; ++i) {
            out[i] += band[i];
        }
    }
    return out;
}

WaveletDecomposition denoise(const WaveletDecomposition& dec,
                             double threshold, ThresholdMode mode) {
    if (threshold < 0.0) {
        throw ValidationError("denoise threshold must be non-negative, got " +
                              format_double(threshold));
    }
    WaveletDecomposition out = dec;
    for (auto& band : out.detail_coeffs) {
        for (double& w : band) {
            if (mode == ThresholdMode::Hard) {
                if (std::abs(w) <= threshold) w = 0.0;
            } else {
                double mag = std::abs(w) - threshold;
                w = mag <= 0.0 ? 0.0 : (w < 0.0 ? -mag : mag);
            }
        }
    }
    WaveletSpec spec = WaveletSpec::make(out.family, out.levels);
    rebuild_subseries(spec, out);
    return out;
}

const char* threshold_mode_name(ThresholdMode mode) {
    return mode == ThresholdMode::Soft ? "soft" : "hard";
}

ThresholdMode parse_threshold_mode(std::string_view name) {
    if (name == "soft") return ThresholdMode::Soft;
    if (name == "hard") return ThresholdMode::Hard;
    throw ValidationError("unknown threshold mode '" + std::string(name) +
                          "' (expected soft or hard)");
}

} // namespace riccinet
