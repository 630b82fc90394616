#pragma once

#include <string>
#include <vector>

#include "cerebro/color.hpp"
#include "cerebro/layout.hpp"

namespace cerebro {

struct SvgOptions {
    bool legend = true;
    double margin = 24.0;
};

/// One <path id="edge-N" data-edge-id="N"> per scene edge, colored by the
/// scheme. Flow mode on a scene without flow values falls back to
/// categorical and appends a warning.
std::string render_svg(const LayoutScene& scene, const ColorScheme& scheme, const SvgOptions& options = {},
                       std::vector<std::string>* warnings = nullptr);

}  // namespace cerebro
