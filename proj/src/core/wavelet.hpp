#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riccinet {

enum class ThresholdMode { Soft, Hard };

// Orthogonal wavelet filter pair plus a decomposition depth. Construction
// verifies the perfect-reconstruction conditions (unit energy, orthogonal
// even shifts, lowpass sum sqrt(2)) to 1e-10.
class WaveletSpec {
public:
    static WaveletSpec make(std::string_view family, std::size_t levels);

    const std::string& family() const { return family_; }
    std::size_t levels() const { return levels_; }
    const std::vector<double>& lowpass() const { return lowpass_; }
    const std::vector<double>& highpass() const { return highpass_; }

private:
    WaveletSpec() = default;
    std::string family_;
    std::size_t levels_ = 0;
    std::vector<double> lowpass_;
    std::vector<double> highpass_;
};

// Multilevel decomposition of a series. Bands are kept both as raw
// coefficients (what thresholding operates on) and as full-length
// time-domain sub-series whose pointwise sum reproduces the original.
struct WaveletDecomposition {
    std::string family;
    std::size_t levels = 0;
    std::size_t original_length = 0;

    std::vector<double> approx_coeffs;
    std::vector<std::vector<double>> detail_coeffs; // [0] = level 1 (finest)

    std::vector<double> approximation;          // full length
    std::vector<std::vector<double>> details;   // full length, finest first
};

// Mallat pyramid to spec.levels() levels with half-sample symmetric
// extension; works for any length >= 2^levels.
WaveletDecomposition dwt_multilevel(std::span<const double> series,
                                    const WaveletSpec& spec);

// Pointwise sum of the approximation and all detail sub-series.
std::vector<double> reconstruct(const WaveletDecomposition& dec);

// Thresholds detail coefficients (hard: zero |w| <= threshold, soft: shrink
// toward zero by threshold) and rebuilds the time-domain sub-series. The
// approximation band is untouched.
WaveletDecomposition denoise(const WaveletDecomposition& dec,
                             double threshold, ThresholdMode mode);

const char* threshold_mode_name(ThresholdMode mode);
ThresholdMode parse_threshold_mode(std::string_view name);

} // namespace riccinet
