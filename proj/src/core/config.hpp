#pragma once

#include "curvature.hpp"
#include "forecaster.hpp"
#include "market_data.hpp"
#include "wavelet.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace riccinet {

enum class CurvatureKind { Ollivier, Forman, Menger, Haantjes };

const char* curvature_kind_name(CurvatureKind kind);
// Upper-case label used in report tables (OR / FR / MR / HR).
const char* curvature_kind_label(CurvatureKind kind);
CurvatureKind parse_curvature_kind(std::string_view name);

// Whole-pipeline configuration. Defaults mirror the reference settings
// throughout: tau 22, delta 5, theta 0.75, 4 wavelet levels, hidden size
// 200, 250 iterations, learning rate 0.005, clip 1.0, 80/20 split.
// Serializes to a flat INI-style file with one section per module.
struct Config {
    // [market-data]
    std::string input;
    WindowScheme scheme = WindowScheme::Rolling;
    std::size_t tau = 22;
    std::size_t delta = 5;

    // [network]
    double theta = 0.75;

    // [curvature]
    std::vector<CurvatureKind> kinds = {
        CurvatureKind::Ollivier, CurvatureKind::Forman,
        CurvatureKind::Menger, CurvatureKind::Haantjes};
    std::size_t max_path_length = 4;
    bool haantjes_squared = false;

    // [wavelet]
    std::string wavelet_family = "db4";
    std::size_t wavelet_levels = 4;
    bool denoise = false;
    double denoise_threshold = 0.0;
    ThresholdMode denoise_mode = ThresholdMode::Soft;

    // [forecaster]
    double train_fraction = 0.8;
    std::size_t max_iterations = 250;
    double learning_rate = 0.005;
    double gradient_clip = 1.0;
    std::size_t hidden_size = 200;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    bool baseline = false;

    // [cli]
    std::uint64_t seed = 0;
    std::string out = "out";
    bool dump_networks = false;

    static Config parse(std::string_view text);
    static Config load(const std::string& path);
    std::string serialize() const;
    void save(const std::string& path) const;

    // Dotted access ("market-data.tau"), used by the C API and by CLI flag
    // overrides. Unknown keys and unparsable values are validation errors.
    void set(std::string_view key, std::string_view value);
    std::string get(std::string_view key) const;

    TrainConfig train_config() const;
    CurvatureOptions curvature_options() const;
    WaveletSpec wavelet_spec() const;
    WdOptions wd_options() const;
};

std::string kinds_to_string(const std::vector<CurvatureKind>& kinds);
std::vector<CurvatureKind> parse_kinds(std::string_view csv);

} // namespace riccinet
