#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace knotcurv {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline constexpr double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Scalar triple product (a x b) . c.
inline constexpr double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(cross(a, b), c);
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    return v / n;
}

inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Unsigned angle between two nonzero vectors, robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Any unit vector orthogonal to the given unit vector.
inline Vec3 any_orthogonal(const Vec3& u) {
    Vec3 ref = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return normalized(cross(u, ref));
}

/// Circumradius of the circle through three points; +inf when collinear.
inline double circumradius(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a, ac = c - a, bc = c - b;
    const double twice_area = norm(cross(ab, ac));
    if (twice_area <= 0.0)
        return std::numeric_limits<double>::infinity();
    return norm(ab) * norm(ac) * norm(bc) / (2.0 * twice_area);
}

struct SegmentClosest {
    double s = 0.0;    // parameter on first segment, in [0,1]
    double t = 0.0;    // parameter on second segment, in [0,1]
    double dist2 = 0.0;
};

/// Closest points between segments [p0,p1] and [q0,q1].
/// Parallel segments with overlapping projections get an interior
/// common-perpendicular realizer rather than an arbitrary endpoint.
SegmentClosest closest_segment_segment(const Vec3& p0, const Vec3& p1,
                                       const Vec3& q0, const Vec3& q1);

/// Min distance from a point to segment [a,b], plus realizing parameter.
struct PointSegClosest {
    double t = 0.0;
    double dist = 0.0;
};
PointSegClosest closest_point_segment(const Vec3& x, const Vec3& a, const Vec3& b);

struct Ball {
    Vec3 center;
    double radius = 0.0;
};

}  // namespace knotcurv
