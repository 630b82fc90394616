#include "cerebro/color.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cerebro {

std::string Rgb::hex() const {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

std::optional<Rgb> Rgb::parse_hex(std::string_view text) {
    if (text.size() != 7 || text[0] != '#') return std::nullopt;
    int v[3];
    for (int i = 0; i < 3; ++i) {
        const char* first = text.data() + 1 + 2 * i;
        const auto [ptr, ec] = std::from_chars(first, first + 2, v[i], 16);
        if (ec != std::errc{} || ptr != first + 2) return std::nullopt;
    }
    return Rgb{v[0], v[1], v[2]};
}

Rgb hsl_to_rgb(double h, double s, double l) {
    h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
    const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) {
        r = c, g = x;
    } else if (hp < 2) {
        r = x, g = c;
    } else if (hp < 3) {
        g = c, b = x;
    } else if (hp < 4) {
        g = x, b = c;
    } else if (hp < 5) {
        r = x, b = c;
    } else {
        r = c, b = x;
    }
    const double m = l - c / 2.0;
    const auto to8 = [m](double v) { return static_cast<int>(std::lround(std::clamp(v + m, 0.0, 1.0) * 255.0)); };
    return {to8(r), to8(g), to8(b)};
}

Hsl rgb_to_hsl(Rgb c) {
    const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    Hsl out;
    out.l = (hi + lo) / 2.0;
    const double d = hi - lo;
    if (d == 0.0) return out;
    out.s = d / (1.0 - std::abs(2.0 * out.l - 1.0));
    if (hi == r) {
        out.h = 60.0 * std::fmod((g - b) / d, 6.0);
    } else if (hi == g) {
        out.h = 60.0 * ((b - r) / d + 2.0);
    } else {
        out.h = 60.0 * ((r - g) / d + 4.0);
    }
    if (out.h < 0) out.h += 360.0;
    return out;
}

std::optional<ColorMode> parse_color_mode(std::string_view text) {
    if (text == "categorical") return ColorMode::Categorical;
    if (text == "flow") return ColorMode::Flow;
    if (text == "bw" || text == "blackwhite") return ColorMode::BlackWhite;
    return std::nullopt;
}

const char* to_string(ColorMode mode) {
    switch (mode) {
        case ColorMode::Categorical: return "categorical";
        case ColorMode::Flow: return "flow";
        case ColorMode::BlackWhite: return "bw";
    }
    return "categorical";
}

Rgb ColorScheme::side_base(Side side) const {
    return hsl_to_rgb(side == Side::Right ? right_hue : left_hue, aca_saturation, lightness);
}

Rgb flow_color(double flow, double scan_max_flow, Rgb base) {
    const double t = scan_max_flow > 0.0 ? std::clamp(flow / scan_max_flow, 0.0, 1.0) : 0.0;
    const auto mix = [t](int c) { return static_cast<int>(std::lround(255.0 + (c - 255.0) * t)); };
    return {mix(base.r), mix(base.g), mix(base.b)};
}

Rgb color_for_edge(const ArteryLabel& label, const ColorScheme& scheme, std::optional<double> flow,
                   double scan_max_flow) {
    using K = ArteryLabel::Kind;
    switch (scheme.mode) {
        case ColorMode::BlackWhite: return scheme.foreground;
        case ColorMode::Flow: {
            const Side side = label.side == Side::None ? Side::Left : label.side;
            return flow_color(flow.value_or(0.0), scan_max_flow, scheme.side_base(side));
        }
        case ColorMode::Categorical: break;
    }
    const double hue = label.side == Side::Right ? scheme.right_hue : scheme.left_hue;
    switch (label.kind) {
        case K::ACA: return hsl_to_rgb(hue, scheme.aca_saturation, scheme.lightness);
        case K::MCA: return hsl_to_rgb(hue, scheme.mca_saturation, scheme.lightness);
        case K::PCA: return hsl_to_rgb(hue, scheme.pca_saturation, scheme.lightness);
        case K::PComm: return scheme.pcomm;
        case K::AComm: return scheme.acomm;
        case K::IC: return scheme.carotid;
        case K::BA: return scheme.basilar;
        case K::Unlabeled: return scheme.unlabeled;
    }
    return scheme.unlabeled;
}

}  // namespace cerebro
