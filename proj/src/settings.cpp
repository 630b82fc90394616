#include "cerebro/settings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

extern char** environ;

namespace cerebro {

namespace {

double to_double(std::string_view key, std::string_view value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(key) + ": not a number: '" + std::string(value) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

using Setter = void (*)(Settings&, std::string_view key, std::string_view value);

#define CEREBRO_NUMBER(path) [](Settings& s, std::string_view k, std::string_view v) { s.path = to_double(k, v); }

const std::vector<std::pair<std::string, Setter>>& table() {
    static const std::vector<std::pair<std::string, Setter>> t = {
        {"layer_height", CEREBRO_NUMBER(layout.layer_height)},
        {"cow_baseline_y", CEREBRO_NUMBER(layout.cow_baseline_y)},
        {"band_gutter", CEREBRO_NUMBER(layout.band_gutter)},
        {"canvas_width", CEREBRO_NUMBER(layout.canvas_width)},
        {"stroke_min", CEREBRO_NUMBER(layout.stroke_min)},
        {"stroke_max", CEREBRO_NUMBER(layout.stroke_max)},
        {"carotid_band_height", CEREBRO_NUMBER(layout.carotid_band_height)},
        {"carotid_amplitude", CEREBRO_NUMBER(layout.carotid_amplitude)},
        {"acomm_arc_rise", CEREBRO_NUMBER(layout.acomm_arc_rise)},
        {"pcomm_arc_drop", CEREBRO_NUMBER(layout.pcomm_arc_drop)},
        {"cow_ring_half_width", CEREBRO_NUMBER(layout.cow_ring_half_width)},
        {"bend_noise_fraction", CEREBRO_NUMBER(layout.bend_noise_fraction)},
        {"corpus_radius_lo", CEREBRO_NUMBER(layout.corpus_radius_lo)},
        {"corpus_radius_hi", CEREBRO_NUMBER(layout.corpus_radius_hi)},
        {"ic_min_drop", CEREBRO_NUMBER(classify.ic_min_drop)},
        {"narrowing_threshold", CEREBRO_NUMBER(outliers.narrowing)},
        {"widening_threshold", CEREBRO_NUMBER(outliers.widening)},
        {"ring_extent_tolerance", CEREBRO_NUMBER(ring_extent_tolerance)},
        {"left_hue", CEREBRO_NUMBER(scheme.left_hue)},
        {"right_hue", CEREBRO_NUMBER(scheme.right_hue)},
        {"axes",
         [](Settings& s, std::string_view k, std::string_view v) {
             try {
                 s.axes = AxisConvention::parse(v);
             } catch (const std::exception& e) {
                 throw ConfigError(std::string(k) + ": " + e.what());
             }
         }},
        {"flow_height",
         [](Settings& s, std::string_view k, std::string_view v) {
             if (v == "depth") {
                 s.flow.height = FlowHeight::TreeDepth;
             } else if (v == "metric") {
                 s.flow.height = FlowHeight::Metric;
             } else {
                 throw ConfigError(std::string(k) + ": expected depth or metric");
             }
         }},
        {"color",
         [](Settings& s, std::string_view k, std::string_view v) {
             const auto mode = parse_color_mode(v);
             if (!mode) throw ConfigError(std::string(k) + ": expected categorical, flow or bw");
             s.scheme.mode = *mode;
         }},
    };
    return t;
}

#undef CEREBRO_NUMBER

}  // namespace

const std::vector<std::string>& settings_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& [k, _] : table()) out.push_back(k);
        return out;
    }();
    return keys;
}

void apply_setting(Settings& settings, std::string_view key, std::string_view value) {
    for (const auto& [k, set] : table()) {
        if (k == key) {
            set(settings, key, trim(value));
            return;
        }
    }
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (std::find(settings_keys().begin(), settings_keys().end(), key) == settings_keys().end()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        out[key] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

std::map<std::string, std::string> settings_from_env(const std::vector<std::string>& environment) {
    static constexpr std::string_view prefix = "CEREBRO_";
    std::map<std::string, std::string> out;
    for (const auto& entry : environment) {
        if (entry.rfind(prefix, 0) != 0) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string key = entry.substr(prefix.size(), eq - prefix.size());
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
        if (std::find(settings_keys().begin(), settings_keys().end(), key) == settings_keys().end()) {
            throw ConfigError("unknown config key in environment: " + entry.substr(0, eq));
        }
        out[key] = entry.substr(eq + 1);
    }
    return out;
}

Settings resolve_settings(const std::map<std::string, std::string>& file,
                          const std::map<std::string, std::string>& env,
                          const std::map<std::string, std::string>& flags) {
    Settings s;
    for (const auto* layer : {&file, &env, &flags}) {
        for (const auto& [k, v] : *layer) apply_setting(s, k, v);
    }
    try {
        s.layout.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(s.classify.ic_min_drop >= 0.0 && s.classify.ic_min_drop < 1.0)) {
        throw ConfigError("ic_min_drop must be in [0, 1)");
    }
    if (!(s.outliers.narrowing > 0.0 && s.outliers.narrowing < 1.0 && s.outliers.widening > 1.0)) {
        throw ConfigError("thresholds need 0 < narrowing_threshold < 1 < widening_threshold");
    }
    if (!(s.ring_extent_tolerance >= 0.0)) throw ConfigError("ring_extent_tolerance must be non-negative");
    return s;
}

std::vector<std::string> process_environment() {
    std::vector<std::string> out;
    for (char** e = environ; e && *e; ++e) out.emplace_back(*e);
    return out;
}

}  // namespace cerebro
