#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "knotcurv/curve.hpp"
#include "knotcurv/error.hpp"

namespace knotcurv {
namespace {

constexpr double kContainSlack = 1e-12;

bool ball_contains(const Ball& b, const Vec3& p) {
    const double r2 = b.radius * b.radius;
    return norm2(p - b.center) <= r2 + kContainSlack * (r2 + 1.0);
}

Ball ball_from_1(const Vec3& a) { return {a, 0.0}; }

Ball ball_from_2(const Vec3& a, const Vec3& b) {
    const Vec3 c = (a + b) * 0.5;
    return {c, dist(a, c)};
}

// Circumscribed ball of a triangle: center in the triangle plane.
// Collinear triples fall back to the widest 2-point ball.
Ball ball_from_3(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 u = b - a, v = c - a;
    const double uu = norm2(u), vv = norm2(v), uv = dot(u, v);
    const double det = uu * vv - uv * uv;
    if (det <= 1e-14 * uu * vv) {
        Ball best = ball_from_2(a, b);
        for (const Ball& cand : {ball_from_2(a, c), ball_from_2(b, c)})
            if (cand.radius > best.radius)
                best = cand;
        return best;
    }
    const double x = 0.5 * (uu * vv - vv * uv) / det;
    const double y = 0.5 * (uu * vv - uu * uv) / det;
    const Vec3 center = a + u * x + v * y;
    return {center, dist(center, a)};
}

// Ball through four points via the 3x3 linear system
// (o-a).(p-a) = |p-a|^2/2 for p in {b,c,d}. Near-coplanar quadruples
// fall back to the smallest covering sub-ball.
Ball ball_from_4(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const Vec3 u = b - a, v = c - a, w = d - a;
    const double det = triple(u, v, w);
    const double scale = std::sqrt(norm2(u) * norm2(v) * norm2(w));
    if (std::abs(det) > 1e-12 * scale) {
        const double ru = 0.5 * norm2(u), rv = 0.5 * norm2(v), rw = 0.5 * norm2(w);
        // Cramer's rule on rows u, v, w.
        const Vec3 vw = cross(v, w), wu = cross(w, u), uv = cross(u, v);
        const Vec3 offset = (vw * ru + wu * rv + uv * rw) / det;
        const Vec3 center = a + offset;
        return {center, dist(center, a)};
    }
    const Vec3 pts[4] = {a, b, c, d};
    Ball best;
    bool found = false;
    auto consider = [&](const Ball& cand) {
        for (const Vec3& p : pts)
            if (!ball_contains(cand, p))
                return;
        if (!found || cand.radius < best.radius) {
            best = cand;
            found = true;
        }
    };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            consider(ball_from_2(pts[i], pts[j]));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                consider(ball_from_3(pts[i], pts[j], pts[k]));
    if (!found)
        best = ball_from_3(a, b, c);  // numerically hopeless input; best effort
    return best;
}

}  // namespace

// Iterative move-to-front Welzl: four nested passes instead of recursion,
// so very large inputs cannot overflow the stack.
Ball min_enclosing_ball_points(const std::vector<Vec3>& points) {
    if (points.empty())
        fail(ErrorCode::invalid_argument, "min_enclosing_ball of empty point set");
    for (const Vec3& p : points)
        if (!finite(p))
            fail(ErrorCode::invalid_argument, "non-finite point in min_enclosing_ball");

    std::vector<const Vec3*> pts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        pts[i] = &points[i];
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::shuffle(pts.begin(), pts.end(), rng);

    Ball ball = ball_from_1(*pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (ball_contains(ball, *pts[i]))
            continue;
        Ball bi = ball_from_1(*pts[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (ball_contains(bi, *pts[j]))
                continue;
            Ball bj = ball_from_2(*pts[i], *pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (ball_contains(bj, *pts[k]))
                    continue;
                Ball bk = ball_from_3(*pts[i], *pts[j], *pts[k]);
                for (std::size_t l = 0; l < k; ++l) {
                    if (ball_contains(bk, *pts[l]))
                        continue;
                    bk = ball_from_4(*pts[i], *pts[j], *pts[k], *pts[l]);
                }
                bj = bk;
            }
            bi = bj;
        }
        ball = bi;
    }
    return ball;
}

}  // namespace knotcurv
