#include "cerebro/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cerebro {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

std::string path_data(const EdgePath& e) {
    std::string d = "M" + num(e.start().x) + " " + num(e.start().y);
    for (const auto& c : e.path) {
        d += " C" + num(c.p[1].x) + " " + num(c.p[1].y) + " " + num(c.p[2].x) + " " + num(c.p[2].y) + " " +
             num(c.p[3].x) + " " + num(c.p[3].y);
    }
    return d;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const LayoutScene& scene, const ColorScheme& scheme, const SvgOptions& options,
                       std::vector<std::string>* warnings) {
    ColorScheme active = scheme;
    double max_flow = 0.0;
    bool any_flow = false;
    for (const auto& e : scene.edges) {
        if (e.flow) {
            any_flow = true;
            max_flow = std::max(max_flow, *e.flow);
        }
    }
    if (active.mode == ColorMode::Flow && !any_flow) {
        active.mode = ColorMode::Categorical;
        if (warnings) warnings->push_back("scene has no flow values; using categorical colors");
    }

    double x0 = 0.0;
    double x1 = scene.config.canvas_width;
    double y0 = std::numeric_limits<double>::infinity();
    double y1 = -y0;
    for (const auto& e : scene.edges) {
        for (const auto& c : e.path) {
            for (const auto& p : c.p) {
                x0 = std::min(x0, p.x);
                x1 = std::max(x1, p.x);
                y0 = std::min(y0, p.y);
                y1 = std::max(y1, p.y);
            }
        }
    }
    if (!std::isfinite(y0)) y0 = y1 = scene.config.cow_baseline_y;
    const double m = options.margin;
    const double legend_h = options.legend ? 28.0 : 0.0;
    const double vx = x0 - m;
    const double vy = y0 - m;
    const double w = x1 - x0 + 2 * m;
    const double h = y1 - y0 + 2 * m + legend_h;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" viewBox=\"" << num(vx) << " " << num(vy) << " " << num(w) << " " << num(h) << "\">\n";
    out << "<title>" << escape(scene.scan_id) << "</title>\n";
    out << "<rect x=\"" << num(vx) << "\" y=\"" << num(vy) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" fill=\"#ffffff\"/>\n";
    out << "<g id=\"edges\" fill=\"none\" stroke-linecap=\"round\">\n";
    for (const auto& e : scene.edges) {
        const Rgb color = color_for_edge(e.label, active, e.flow, max_flow);
        out << "<path id=\"edge-" << e.edge_id << "\" data-edge-id=\"" << e.edge_id << "\" data-label=\""
            << escape(e.label.name()) << "\" d=\"" << path_data(e) << "\" stroke=\"" << color.hex()
            << "\" stroke-width=\"" << num(e.stroke_width) << "\"";
        if (e.dashed) out << " stroke-dasharray=\"6 4\"";
        out << "/>\n";
    }
    out << "</g>\n";
    if (options.legend) {
        using K = ArteryLabel::Kind;
        std::vector<ArteryLabel> entries;
        for (Side s : {Side::Left, Side::Right}) {
            for (K k : {K::ACA, K::MCA, K::PCA, K::PComm, K::IC}) entries.push_back(ArteryLabel::named(k, s));
        }
        entries.push_back(ArteryLabel::ba());
        entries.push_back(ArteryLabel::acomm());
        const double ly = y1 + m;
        const double step = (w - 2 * m) / entries.size();
        out << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"10\">\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const double lx = x0 + i * step;
            const Rgb c = active.mode == ColorMode::Categorical ? color_for_edge(entries[i], active)
                                                                 : color_for_edge(entries[i], active, 1.0, 1.0);
            out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"12\" height=\"12\" fill=\""
                << c.hex() << "\"/>";
            out << "<text x=\"" << num(lx + 16) << "\" y=\"" << num(ly + 10) << "\">" << escape(entries[i].name())
                << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cerebro
