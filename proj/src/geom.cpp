#include "knotcurv/geom.hpp"

#include <algorithm>

namespace knotcurv {

PointSegClosest closest_point_segment(const Vec3& x, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = norm2(ab);
    PointSegClosest out;
    if (len2 <= 0.0) {
        out.t = 0.0;
        out.dist = dist(x, a);
        return out;
    }
    out.t = std::clamp(dot(x - a, ab) / len2, 0.0, 1.0);
    out.dist = dist(x, a + ab * out.t);
    return out;
}

// Closest points between two segments, after Ericson, "Real-Time
// Collision Detection", section 5.1.9.
SegmentClosest closest_segment_segment(const Vec3& p0, const Vec3& p1,
                                       const Vec3& q0, const Vec3& q1) {
    const Vec3 d1 = p1 - p0;
    const Vec3 d2 = q1 - q0;
    const Vec3 r = p0 - q0;
    const double a = norm2(d1);
    const double e = norm2(d2);
    const double f = dot(d2, r);

    double s = 0.0, t = 0.0;
    if (a <= 0.0 && e <= 0.0) {
        // both degenerate to points
    } else if (a <= 0.0) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= 0.0) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            if (denom > 1e-12 * a * e) {
                s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            } else {
                // Near-parallel: pick the midpoint of the parameter interval on
                // the first segment whose projection overlaps the second, so the
                // realizer is a common perpendicular when one exists.
                const double u0 = std::clamp(-c / a, 0.0, 1.0);          // q0 projected
                const double u1 = std::clamp((b - c) / a, 0.0, 1.0);     // q1 projected
                s = 0.5 * (u0 + u1);
            }
            t = std::clamp((b * s + f) / e, 0.0, 1.0);
            s = std::clamp((b * t - c) / a, 0.0, 1.0);
        }
    }
    SegmentClosest out;
    out.s = s;
    out.t = t;
    out.dist2 = norm2((p0 + d1 * s) - (q0 + d2 * t));
    return out;
}

}  // namespace knotcurv
