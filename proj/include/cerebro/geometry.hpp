#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace cerebro {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, Vec3 a) { return a * s; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 normalized(Vec3 v) {
    const double n = v.norm();
    return n > 0.0 ? v * (1.0 / n) : v;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;

    double norm() const { return std::hypot(x, y); }
};

/// Cubic Bezier segment in canvas space (y grows downward, SVG convention).
struct CubicBezier {
    std::array<Vec2, 4> p{};

    Vec2 at(double t) const;
    Vec2 derivative(double t) const;
};

/// Arc length by composite 8-point Gauss-Legendre quadrature.
double arc_length(const CubicBezier& c, int panels = 16);

/// Uniformly sampled polyline through the curve, `steps` + 1 points.
std::vector<Vec2> flatten(const CubicBezier& c, int steps);

/// Proper or touching intersection test for closed segments ab and cd.
/// Returns the intersection point when the segments meet in a single point,
/// or the midpoint of the overlap for collinear overlapping segments.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Vec2* where = nullptr);

}  // namespace cerebro
