#pragma once

#include <cmath>

namespace arcmusic {

// Plain 2D vector, double precision. Everything the imaging pipeline needs:
// arithmetic, dot product, norm, normalization, +90 degree rotation.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double px, double py) : x(px), y(py) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }

    /// Counterclockwise quarter turn; used to orient arc normals.
    constexpr Vec2 perp() const { return {-y, x}; }

    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }

    static Vec2 from_angle(double phi) { return {std::cos(phi), std::sin(phi)}; }
};

}  // namespace arcmusic
