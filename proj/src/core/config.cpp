#include "config.hpp"

#include "errors.hpp"
#include "text.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace riccinet {

const char* curvature_kind_name(CurvatureKind kind) {
    switch (kind) {
    case CurvatureKind::Ollivier: return "or";
    case CurvatureKind::Forman: return "fr";
    case CurvatureKind::Menger: return "mr";
    case CurvatureKind::Haantjes: return "hr";
    }
    return "?";
}

const char* curvature_kind_label(CurvatureKind kind) {
    switch (kind) {
    case CurvatureKind::Ollivier: return "OR";
    case CurvatureKind::Forman: return "FR";
    case CurvatureKind::Menger: return "MR";
    case CurvatureKind::Haantjes: return "HR";
    }
    return "?";
}

CurvatureKind parse_curvature_kind(std::string_view name) {
    if (name == "or") return CurvatureKind::Ollivier;
    if (name == "fr") return CurvatureKind::Forman;
    if (name == "mr") return CurvatureKind::Menger;
    if (name == "hr") return CurvatureKind::Haantjes;
    throw ValidationError("unknown curvature kind '" + std::string(name) +
                          "' (expected or, fr, mr, hr)");
}

std::string kinds_to_string(const std::vector<CurvatureKind>& kinds) {
    std::string out;
    for (const auto& kind : kinds) {
        if (!out.empty()) out += ',';
        out += curvature_kind_name(kind);
    }
    return out;
}

std::vector<CurvatureKind> parse_kinds(std::string_view csv) {
    std::vector<CurvatureKind> kinds;
    for (auto part : split(csv, ',')) {
        auto name = trim(part);
        if (name.empty()) continue;
        CurvatureKind kind = parse_curvature_kind(name);
        if (std::find(kinds.begin(), kinds.end(), kind) != kinds.end()) {
            throw ValidationError("duplicate curvature kind '" +
                                  std::string(name) + "'");
        }
        kinds.push_back(kind);
    }
    if (kinds.empty()) {
        throw ValidationError("curvature kind list is empty");
    }
    return kinds;
}

namespace {

bool parse_bool(std::string_view value, const std::string& context) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ValidationError("expected true or false for " + context +
                          ", got '" + std::string(value) + "'");
}

struct KeyDef {
    const char* key; // "section.name"
    std::function<std::string(const Config&)> get;
    std::function<void(Config&, std::string_view)> set;
};

const std::vector<KeyDef>& key_table() {
    static const std::vector<KeyDef> table = {
        {"market-data.input",
         [](const Config& c) { return c.input; },
         [](Config& c, std::string_view v) { c.input = std::string(v); }},
        {"market-data.scheme",
         [](const Config& c) {
             return std::string(window_scheme_name(c.scheme));
         },
         [](Config& c, std::string_view v) {
             c.scheme = parse_window_scheme(v);
         }},
        {"market-data.tau",
         [](const Config& c) { return std::to_string(c.tau); },
         [](Config& c, std::string_view v) {
             c.tau = parse_uint(v, "market-data.tau");
         }},
        {"market-data.delta",
         [](const Config& c) { return std::to_string(c.delta); },
         [](Config& c, std::string_view v) {
             c.delta = parse_uint(v, "market-data.delta");
         }},
        {"network.theta",
         [](const Config& c) { return format_double(c.theta); },
         [](Config& c, std::string_view v) {
             c.theta = parse_double(v, "network.theta");
         }},
        {"curvature.kinds",
         [](const Config& c) { return kinds_to_string(c.kinds); },
         [](Config& c, std::string_view v) { c.kinds = parse_kinds(v); }},
        {"curvature.max_path_length",
         [](const Config& c) { return std::to_string(c.max_path_length); },
         [](Config& c, std::string_view v) {
             c.max_path_length =
                 parse_uint(v, "curvature.max_path_length");
             if (c.max_path_length < 2 || c.max_path_length > 8) {
                 throw ValidationError(
                     "curvature.max_path_length must lie in [2, 8]");
             }
         }},
        {"curvature.haantjes_squared",
         [](const Config& c) {
             return std::string(c.haantjes_squared ? "true" : "false");
         },
         [](Config& c, std::string_view v) {
             c.haantjes_squared = parse_bool(v, "curvature.haantjes_squared");
         }},
        {"wavelet.family",
         [](const Config& c) { return c.wavelet_family; },
         [](Config& c, std::string_view v) {
             c.wavelet_family = std::string(v);
         }},
        {"wavelet.levels",
         [](const Config& c) { return std::to_string(c.wavelet_levels); },
         [](Config& c, std::string_view v) {
             c.wavelet_levels = parse_uint(v, "wavelet.levels");
             if (c.wavelet_levels < 1 || c.wavelet_levels > 12) {
                 throw ValidationError("wavelet.levels must lie in [1, 12]");
             }
         }},
        {"wavelet.denoise",
         [](const Config& c) {
             return std::string(c.denoise ? "true" : "false");
         },
         [](Config& c, std::string_view v) {
             c.denoise = parse_bool(v, "wavelet.denoise");
         }},
        {"wavelet.threshold",
         [](const Config& c) { return format_double(c.denoise_threshold); },
         [](Config& c, std::string_view v) {
             c.denoise_threshold = parse_double(v, "wavelet.threshold");
         }},
        {"wavelet.mode",
         [](const Config& c) {
             return std::string(threshold_mode_name(c.denoise_mode));
         },
         [](Config& c, std::string_view v) {
             c.denoise_mode = parse_threshold_mode(v);
         }},
        {"forecaster.train_fraction",
         [](const Config& c) { return format_double(c.train_fraction); },
         [](Config& c, std::string_view v) {
             c.train_fraction = parse_double(v, "forecaster.train_fraction");
         }},
        {"forecaster.max_iterations",
         [](const Config& c) { return std::to_string(c.max_iterations); },
         [](Config& c, std::string_view v) {
             c.max_iterations = parse_uint(v, "forecaster.max_iterations");
         }},
        {"forecaster.learning_rate",
         [](const Config& c) { return format_double(c.learning_rate); },
         [](Config& c, std::string_view v) {
             c.learning_rate = parse_double(v, "forecaster.learning_rate");
         }},
        {"forecaster.gradient_clip",
         [](const Config& c) { return format_double(c.gradient_clip); },
         [](Config& c, std::string_view v) {
             c.gradient_clip = parse_double(v, "forecaster.gradient_clip");
         }},
        {"forecaster.hidden_size",
         [](const Config& c) { return std::to_string(c.hidden_size); },
         [](Config& c, std::string_view v) {
             c.hidden_size = parse_uint(v, "forecaster.hidden_size");
             if (c.hidden_size < 1) {
                 throw ValidationError(
                     "forecaster.hidden_size must be positive");
             }
         }},
        {"forecaster.adam_beta1",
         [](const Config& c) { return format_double(c.adam_beta1); },
         [](Config& c, std::string_view v) {
             c.adam_beta1 = parse_double(v, "forecaster.adam_beta1");
         }},
        {"forecaster.adam_beta2",
         [](const Config& c) { return format_double(c.adam_beta2); },
         [](Config& c, std::string_view v) {
             c.adam_beta2 = parse_double(v, "forecaster.adam_beta2");
         }},
        {"forecaster.adam_epsilon",
         [](const Config& c) { return format_double(c.adam_epsilon); },
         [](Config& c, std::string_view v) {
             c.adam_epsilon = parse_double(v, "forecaster.adam_epsilon");
         }},
        {"forecaster.baseline",
         [](const Config& c) {
             return std::string(c.baseline ? "true" : "false");
         },
         [](Config& c, std::string_view v) {
             c.baseline = parse_bool(v, "forecaster.baseline");
         }},
        {"cli.seed",
         [](const Config& c) { return std::to_string(c.seed); },
         [](Config& c, std::string_view v) {
             c.seed = parse_uint(v, "cli.seed");
         }},
        {"cli.out",
         [](const Config& c) { return c.out; },
         [](Config& c, std::string_view v) { c.out = std::string(v); }},
        {"cli.dump_networks",
         [](const Config& c) {
             return std::string(c.dump_networks ? "true" : "false");
         },
         [](Config& c, std::string_view v) {
             c.dump_networks = parse_bool(v, "cli.dump_networks");
         }},
    };
    return table;
}

const KeyDef& find_key(std::string_view key) {
    for (const auto& def : key_table()) {
        if (key == def.key) return def;
    }
    throw ValidationError("unknown config key '" + std::string(key) + "'");
}

} // namespace

void Config::set(std::string_view key, std::string_view value) {
    find_key(key).set(*this, trim(value));
}

std::string Config::get(std::string_view key) const {
    return find_key(key).get(*this);
}

Config Config::parse(std::string_view text) {
    Config cfg;
    std::string section;
    std::size_t line_no = 0;
    for (auto raw_line : split(text, '\n')) {
        ++line_no;
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ValidationError("malformed section header on line " +
                                      std::to_string(line_no));
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("expected key = value on line " +
                                  std::to_string(line_no));
        }
        std::string key = section + "." +
                          std::string(trim(line.substr(0, eq)));
        cfg.set(key, trim(line.substr(eq + 1)));
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    return parse(read_file(path));
}

std::string Config::serialize() const {
    std::ostringstream out;
    std::string current_section;
    for (const auto& def : key_table()) {
        std::string_view key = def.key;
        auto dot = key.find('.');
        std::string_view section = key.substr(0, dot);
        std::string_view name = key.substr(dot + 1);
        if (section != current_section) {
            if (!current_section.empty()) out << "\n";
            out << "[" << section << "]\n";
            current_section = std::string(section);
        }
        out << name << " = " << def.get(*this) << "\n";
    }
    return std::move(out).str();
}

void Config::save(const std::string& path) const {
    write_file_atomic(path, serialize());
}

TrainConfig Config::train_config() const {
    TrainConfig cfg;
    cfg.train_fraction = train_fraction;
    cfg.max_iterations = max_iterations;
    cfg.learning_rate = learning_rate;
    cfg.gradient_clip = gradient_clip;
    cfg.hidden_size = hidden_size;
    cfg.adam = AdamConfig{adam_beta1, adam_beta2, adam_epsilon};
    cfg.seed = seed;
    return cfg;
}

CurvatureOptions Config::curvature_options() const {
    return CurvatureOptions{max_path_length, haantjes_squared};
}

WaveletSpec Config::wavelet_spec() const {
    return WaveletSpec::make(wavelet_family, wavelet_levels);
}

WdOptions Config::wd_options() const {
    return WdOptions{denoise, denoise_threshold, denoise_mode};
}

} // namespace riccinet
