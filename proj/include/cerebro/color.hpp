#pragma once

#include <optional>
#include <string>

#include "cerebro/labels.hpp"

namespace cerebro {

struct Rgb {
    int r = 0;
    int g = 0;
    int b = 0;

    std::string hex() const;  // "#rrggbb"
    static std::optional<Rgb> parse_hex(std::string_view text);
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// h in degrees, s and l in [0, 1].
Rgb hsl_to_rgb(double h, double s, double l);

/// Saturation and hue of a color, for palette checks.
struct Hsl {
    double h = 0.0;
    double s = 0.0;
    double l = 0.0;
};
Hsl rgb_to_hsl(Rgb c);

enum class ColorMode { Categorical, Flow, BlackWhite };

std::optional<ColorMode> parse_color_mode(std::string_view text);
const char* to_string(ColorMode mode);

struct ColorScheme {
    ColorMode mode = ColorMode::Categorical;
    double left_hue = 215.0;   // blue
    double right_hue = 28.0;   // orange
    double aca_saturation = 0.9;
    double mca_saturation = 0.65;
    double pca_saturation = 0.4;
    double lightness = 0.5;
    Rgb pcomm{0xD0, 0x34, 0x2C};
    Rgb acomm{0x8C, 0x8C, 0x8C};
    Rgb carotid{0x8B, 0x5A, 0x2B};
    Rgb basilar{0x6A, 0x3D, 0x9A};
    Rgb unlabeled{0xC8, 0xC8, 0xC8};
    Rgb foreground{0, 0, 0};

    /// Full-saturation base color of a hemisphere, the top of the flow ramp.
    Rgb side_base(Side side) const;
};

/// Linear RGB ramp from white (no flow) to `base` (scan maximum).
Rgb flow_color(double flow, double scan_max_flow, Rgb base);

/// Categorical, flow or single-foreground color for an edge. In flow mode
/// an edge without a flow value is drawn as zero flow.
Rgb color_for_edge(const ArteryLabel& label, const ColorScheme& scheme, std::optional<double> flow = std::nullopt,
                   double scan_max_flow = 1.0);

}  // namespace cerebro
