#include "cerebro/geometry.hpp"

#include <algorithm>

namespace cerebro {

Vec2 CubicBezier::at(double t) const {
    const double u = 1.0 - t;
    const double b0 = u * u * u;
    const double b1 = 3.0 * u * u * t;
    const double b2 = 3.0 * u * t * t;
    const double b3 = t * t * t;
    return {b0 * p[0].x + b1 * p[1].x + b2 * p[2].x + b3 * p[3].x,
            b0 * p[0].y + b1 * p[1].y + b2 * p[2].y + b3 * p[3].y};
}

Vec2 CubicBezier::derivative(double t) const {
    const double u = 1.0 - t;
    const Vec2 d0 = p[1] - p[0];
    const Vec2 d1 = p[2] - p[1];
    const Vec2 d2 = p[3] - p[2];
    return d0 * (3.0 * u * u) + d1 * (6.0 * u * t) + d2 * (3.0 * t * t);
}

double arc_length(const CubicBezier& c, int panels) {
    static constexpr std::array<double, 4> kNodes{0.1834346424956498, 0.5255324099163290,
                                                  0.7966664774136267, 0.9602898564975363};
    static constexpr std::array<double, 4> kWeights{0.3626837833783620, 0.3137066458778873,
                                                    0.2223810344533745, 0.1012285362903763};
    double total = 0.0;
    const double h = 1.0 / panels;
    for (int k = 0; k < panels; ++k) {
        const double mid = (k + 0.5) * h;
        const double half = 0.5 * h;
        for (std::size_t i = 0; i < kNodes.size(); ++i) {
            total += kWeights[i] * half * c.derivative(mid - half * kNodes[i]).norm();
            total += kWeights[i] * half * c.derivative(mid + half * kNodes[i]).norm();
        }
    }
    return total;
}

std::vector<Vec2> flatten(const CubicBezier& c, int steps) {
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        out.push_back(c.at(static_cast<double>(i) / steps));
    }
    return out;
}

namespace {

double orient(Vec2 a, Vec2 b, Vec2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Vec2* where) {
    const double d1 = orient(c, d, a);
    const double d2 = orient(c, d, b);
    const double d3 = orient(a, b, c);
    const double d4 = orient(a, b, d);

    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        if (where) {
            const double t = d1 / (d1 - d2);
            *where = a + (b - a) * t;
        }
        return true;
    }
    if (d1 == 0 && on_segment(c, d, a)) {
        if (where) *where = a;
        return true;
    }
    if (d2 == 0 && on_segment(c, d, b)) {
        if (where) *where = b;
        return true;
    }
    if (d3 == 0 && on_segment(a, b, c)) {
        if (where) *where = c;
        return true;
    }
    if (d4 == 0 && on_segment(a, b, d)) {
        if (where) *where = d;
        return true;
    }
    return false;
}

}  // namespace cerebro
