#pragma once

// Resolved run settings and their flat "key = value" sources.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cerebro/analysis.hpp"
#include "cerebro/classify.hpp"
#include "cerebro/color.hpp"
#include "cerebro/flow.hpp"
#include "cerebro/layout.hpp"
#include "cerebro/swc.hpp"

namespace cerebro {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Settings {
    AxisConvention axes;
    ClassifyConfig classify;
    LayoutConfig layout;
    FlowConfig flow;
    OutlierThresholds outliers;
    double ring_extent_tolerance = 0.2;
    ColorScheme scheme;
};

/// Every accepted key, in documentation order.
const std::vector<std::string>& settings_keys();

/// Applies one key; throws ConfigError for unknown keys or bad values.
void apply_setting(Settings& settings, std::string_view key, std::string_view value);

/// Parses a config document: one "key = value" per line, '#' comments.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Values from CEREBRO_<KEY> variables in `environ`-style entries.
std::map<std::string, std::string> settings_from_env(const std::vector<std::string>& environment);

/// File, then environment, then flags, each overriding the previous.
Settings resolve_settings(const std::map<std::string, std::string>& file,
                          const std::map<std::string, std::string>& env,
                          const std::map<std::string, std::string>& flags);

/// Current process environment as "KEY=VALUE" strings.
std::vector<std::string> process_environment();

}  // namespace cerebro
