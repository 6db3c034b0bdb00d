#include "knotcurv/generators.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "knotcurv/error.hpp"
#include "knotcurv/invariants.hpp"

namespace knotcurv {

namespace {

constexpr double kPi = std::numbers::pi;

void require_samples(std::size_t samples, std::size_t minimum = 3) {
    if (samples < minimum)
        fail(ErrorCode::invalid_argument,
             "need at least " + std::to_string(minimum) + " samples, got " +
                 std::to_string(samples));
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Appends p unless it duplicates the current tail.
void push_point(std::vector<Vec3>& pts, const Vec3& p) {
    if (!pts.empty() && norm2(pts.back() - p) < 1e-24)
        return;
    pts.push_back(p);
}

// Quintic Hermite segment with zero end second derivatives; matches
// position and tangent at both ends.
void append_quintic_blend(std::vector<Vec3>& pts, const Vec3& p0, const Vec3& t0, const Vec3& p1,
                          const Vec3& t1, std::size_t steps) {
    const double len = dist(p0, p1);
    const Vec3 m0 = t0 * len, m1 = t1 * len;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double u = static_cast<double>(k) / static_cast<double>(steps);
        const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
        const double h1 = 10 * u3 - 15 * u4 + 6 * u5;
        const double h0 = 1.0 - h1;
        const double g0 = u - 6 * u3 + 8 * u4 - 3 * u5;
        const double g1 = -4 * u3 + 7 * u4 - 3 * u5;
        push_point(pts, p0 * h0 + p1 * h1 + m0 * g0 + m1 * g1);
    }
}

// Planar turtle in the y = 0 plane: tracks position/heading in (x, z).
struct PlaneTurtle {
    Vec3 pos;
    Vec3 heading;  // unit, y = 0
    std::vector<Vec3>& pts;

    PlaneTurtle(std::vector<Vec3>& out, const Vec3& start, const Vec3& dir)
        : pos(start), heading(normalized(dir)), pts(out) {
        push_point(pts, pos);
    }

    void line(double length, std::size_t steps) {
        for (std::size_t k = 1; k <= steps; ++k)
            push_point(pts, pos + heading * (length * static_cast<double>(k) /
                                             static_cast<double>(steps)));
        pos += heading * length;
    }

    // Circular arc of the given radius turning by `turn` radians
    // (positive = counterclockwise in the (x, z) plane).
    void arc(double radius, double turn, std::size_t steps) {
        const double sgn = turn >= 0 ? 1.0 : -1.0;
        const Vec3 left{-heading.z, 0.0, heading.x};  // ccw normal of heading
        const Vec3 center = pos + left * (sgn * radius);
        const Vec3 radial = pos - center;
        for (std::size_t k = 1; k <= steps; ++k) {
            const double phi = turn * static_cast<double>(k) / static_cast<double>(steps);
            const double c = std::cos(phi), s = std::sin(phi);
            // rotate `radial` by phi in the (x, z) plane
            const Vec3 r{radial.x * c - radial.z * s, 0.0, radial.x * s + radial.z * c};
            push_point(pts, center + r);
        }
        const double c = std::cos(turn), s = std::sin(turn);
        pos = center + Vec3{radial.x * c - radial.z * s, 0.0, radial.x * s + radial.z * c};
        heading = normalized(Vec3{heading.x * c - heading.z * s, 0.0,
                                  heading.x * s + heading.z * c});
    }
};

double polyline_curvature(const std::vector<Vec3>& pts) {
    double kappa = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        kappa += angle_between(pts[i] - pts[i - 1], pts[i + 1] - pts[i]);
    return kappa;
}

}  // namespace

SampledCurve gen_torus_knot(int p, int q, double major_radius, double minor_radius,
                            std::size_t samples) {
    if (p < 1 || q < 1)
        fail(ErrorCode::invalid_argument, "torus knot needs p, q >= 1");
    if (std::gcd(p, q) != 1)
        fail(ErrorCode::invalid_argument, "torus knot needs gcd(p, q) = 1");
    if (!(minor_radius > 0.0) || !(minor_radius < major_radius))
        fail(ErrorCode::invalid_argument, "torus knot needs 0 < minor_radius < major_radius");
    require_samples(samples);

    SampledCurve curve;
    curve.closed = true;
    curve.vertices.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
        const double rho = major_radius + minor_radius * std::cos(p * t);
        curve.vertices.push_back(
            {rho * std::cos(q * t), rho * std::sin(q * t), minor_radius * std::sin(p * t)});
    }
    curve.meta = {{"family", "torus_knot"},
                  {"p", std::to_string(p)},
                  {"q", std::to_string(q)},
                  {"major_radius", fmt(major_radius)},
                  {"minor_radius", fmt(minor_radius)}};
    curve.validate();
    return curve;
}

SampledCurve gen_helix_composite(int n, double exponent, std::size_t samples) {
    if (n < 3 || n % 2 == 0)
        fail(ErrorCode::invalid_argument, "helix composite needs odd n >= 3");
    if (!(exponent > 1.0))
        fail(ErrorCode::invalid_argument, "helix composite needs exponent > 1");
    require_samples(samples, 64);

    const double slope = std::pow(static_cast<double>(n), exponent);
    const double t_end = static_cast<double>(n) * kPi;
    const double z_top = slope * t_end;
    const double inv = 1.0 / std::sqrt(1.0 + slope * slope);
    const Vec3 helix_start{1.0, 0.0, 0.0};
    const Vec3 helix_end{-1.0, 0.0, z_top};
    const Vec3 tan_start = Vec3{0.0, 1.0, slope} * inv;
    const Vec3 tan_end = Vec3{0.0, -1.0, slope} * inv;

    // Connector layout: rounded rectangular detours in the y = 0 plane,
    // one per side of the braid, meeting the helix ends through quintic
    // blends and the axis ends exactly.
    const double corner = 0.75;
    const double lane1 = -3.0, lane2 = 3.0;
    const double bot1 = -1.5, bot2 = -2.5;

    std::vector<Vec3> helix_pts, axis_pts, conn1_pts, conn2_pts;

    const std::size_t helix_dense = std::max<std::size_t>(8 * samples, 512 * n);
    for (std::size_t k = 0; k <= helix_dense; ++k) {
        const double t = t_end * static_cast<double>(k) / static_cast<double>(helix_dense);
        push_point(helix_pts, {std::cos(t), std::sin(t), slope * t});
    }

    {  // connector 1: helix top -> axis bottom
        append_quintic_blend(conn1_pts, helix_end, tan_end, helix_end + Vec3{0, 0, 1.0},
                             {0, 0, 1}, 64);
        PlaneTurtle turtle(conn1_pts, helix_end + Vec3{0, 0, 1.0}, {0, 0, 1});
        turtle.arc(corner, kPi / 2, 48);                          // heading -x
        turtle.line((-1.0 - corner) - (lane1 + corner), 16);      // over the top
        turtle.arc(corner, kPi / 2, 48);                          // heading -z
        turtle.line((z_top + 1.0) - (bot1 + corner), 64);         // down the lane
        turtle.arc(corner, kPi / 2, 48);                          // heading +x
        turtle.line((-corner) - (lane1 + corner), 16);            // along the bottom
        turtle.arc(corner, kPi / 2, 48);                          // heading +z, at (0, bot1+corner)
        turtle.line(-(bot1 + corner), 16);                        // up into the axis start
    }

    push_point(axis_pts, {0, 0, 0});
    push_point(axis_pts, {0, 0, z_top});

    {  // connector 2: axis top -> helix bottom
        PlaneTurtle turtle(conn2_pts, {0, 0, z_top}, {0, 0, 1});
        turtle.line(2.5, 16);
        turtle.arc(corner, -kPi / 2, 48);                         // heading +x
        turtle.line((lane2 - corner) - corner, 16);
        turtle.arc(corner, -kPi / 2, 48);                         // heading -z
        turtle.line((z_top + 2.5) - (bot2 + corner), 64);
        turtle.arc(corner, -kPi / 2, 48);                         // heading -x
        turtle.line((lane2 - corner) - (1.0 + corner), 16);
        turtle.arc(corner, -kPi / 2, 48);                         // heading +z, at (1, bot2+corner)
        turtle.line(-(bot2 + corner) - 1.0, 16);                  // up to (1, 0, -1)
        append_quintic_blend(conn2_pts, {1.0, 0.0, -1.0}, {0, 0, 1}, helix_start, tan_start, 64);
    }

    std::vector<Vec3> dense;
    dense.reserve(helix_pts.size() + conn1_pts.size() + axis_pts.size() + conn2_pts.size());
    for (const Vec3& p : helix_pts)
        push_point(dense, p);
    for (const Vec3& p : conn1_pts)
        push_point(dense, p);
    for (const Vec3& p : axis_pts)
        push_point(dense, p);
    for (const Vec3& p : conn2_pts)
        push_point(dense, p);
    if (norm2(dense.back() - dense.front()) < 1e-24)
        dense.pop_back();

    SampledCurve loop;
    loop.closed = true;
    loop.vertices = std::move(dense);
    loop.validate();
    SampledCurve out = resample(loop, samples);
    out.meta = {{"family", "helix_composite"},
                {"n", std::to_string(n)},
                {"exponent", fmt(exponent)},
                {"kappa_helix", fmt(polyline_curvature(helix_pts))},
                {"kappa_axis", fmt(polyline_curvature(axis_pts))},
                {"kappa_connector1", fmt(polyline_curvature(conn1_pts))},
                {"kappa_connector2", fmt(polyline_curvature(conn2_pts))}};
    return out;
}

SampledCurve gen_spiral(double theta_max, std::size_t samples) {
    if (!(theta_max > 1.0))
        fail(ErrorCode::invalid_argument, "spiral needs theta_max > 1");
    require_samples(samples);

    SampledCurve curve;
    curve.closed = false;
    curve.vertices.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta =
            1.0 + (theta_max - 1.0) * static_cast<double>(k) / static_cast<double>(samples - 1);
        const double r = 3.0 - 1.0 / theta;
        curve.vertices.push_back({r * std::cos(theta), r * std::sin(theta), 0.0});
    }
    curve.meta = {{"family", "spiral"}, {"theta_max", fmt(theta_max)}};
    curve.validate();
    return curve;
}

SampledCurve gen_rounded_polygon(const std::vector<Vec3>& corners, double corner_radius,
                                 std::size_t samples, bool closed) {
    const std::size_t m = corners.size();
    if (m < 3)
        fail(ErrorCode::invalid_argument, "rounded polygon needs at least 3 corner points");
    if (!(corner_radius > 0.0))
        fail(ErrorCode::invalid_argument, "corner radius must be positive");
    require_samples(samples);

    const std::size_t edges = closed ? m : m - 1;
    double min_edge = std::numeric_limits<double>::infinity();
    std::vector<Vec3> dir(edges);
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec3 e = corners[(i + 1) % m] - corners[i];
        const double len = norm(e);
        if (!(len > 0.0))
            fail(ErrorCode::invalid_argument, "degenerate polygon edge at " + std::to_string(i));
        min_edge = std::min(min_edge, len);
        dir[i] = e / len;
    }
    const std::size_t ncorners = closed ? m : m - 2;
    for (std::size_t c = 0; c < ncorners; ++c) {
        const std::size_t e1 = closed ? c : c;
        const std::size_t e2 = (e1 + 1) % edges;
        if (std::abs(dot(dir[e1], dir[e2])) > 1e-9)
            fail(ErrorCode::precondition,
                 "consecutive edges must meet at a right angle (corner " + std::to_string(c) +
                     ")");
    }
    if (!(corner_radius < 0.5 * min_edge))
        fail(ErrorCode::precondition, "corner radius must be below half the shortest edge");

    std::vector<Vec3> dense;
    auto emit_line = [&](const Vec3& a, const Vec3& b) {
        const std::size_t steps = 32;
        for (std::size_t k = 0; k <= steps; ++k)
            push_point(dense, a + (b - a) * (static_cast<double>(k) / steps));
    };
    auto emit_corner_arc = [&](const Vec3& v, const Vec3& d1, const Vec3& d2) {
        const Vec3 center = v - d1 * corner_radius + d2 * corner_radius;
        const std::size_t steps = 48;
        for (std::size_t k = 0; k <= steps; ++k) {
            const double phi = (kPi / 2.0) * static_cast<double>(k) / steps;
            push_point(dense, center - d2 * (corner_radius * std::cos(phi)) +
                                  d1 * (corner_radius * std::sin(phi)));
        }
    };

    if (!closed) {
        Vec3 cursor = corners[0];
        for (std::size_t i = 0; i + 1 < edges; ++i) {
            emit_line(cursor, corners[i + 1] - dir[i] * corner_radius);
            emit_corner_arc(corners[i + 1], dir[i], dir[i + 1]);
            cursor = corners[i + 1] + dir[i + 1] * corner_radius;
        }
        emit_line(cursor, corners[m - 1]);
    } else {
        Vec3 cursor = corners[0] + dir[0] * corner_radius;
        for (std::size_t i = 0; i < edges; ++i) {
            const std::size_t next = (i + 1) % edges;
            emit_line(cursor, corners[(i + 1) % m] - dir[i] * corner_radius);
            emit_corner_arc(corners[(i + 1) % m], dir[i], dir[next]);
            cursor = corners[(i + 1) % m] + dir[next] * corner_radius;
        }
    }

    if (closed && norm2(dense.back() - dense.front()) < 1e-24)
        dense.pop_back();

    SampledCurve path;
    path.closed = closed;
    path.vertices = std::move(dense);
    path.validate();
    SampledCurve out = resample(path, samples);
    out.meta = {{"family", "rounded_polygon"},
                {"corner_radius", fmt(corner_radius)},
                {"edges", std::to_string(edges)}};
    return out;
}

SampledCurve gen_fourier_random(std::size_t modes, std::uint64_t seed, std::size_t samples) {
    if (modes < 1)
        fail(ErrorCode::invalid_argument, "fourier curve needs at least one mode");
    require_samples(samples);

    // Fixed Box-Muller over an explicit mt19937_64 stream so the same
    // seed always gives the same coefficients.
    std::mt19937_64 rng(seed);
    auto unit_double = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    auto gaussian = [&]() {
        const double u1 = unit_double();
        const double u2 = unit_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };

    std::vector<Vec3> cos_coef(modes), sin_coef(modes);
    for (std::size_t k = 0; k < modes; ++k) {
        const double sigma = 1.0 / static_cast<double>((k + 1) * (k + 1));
        cos_coef[k] = Vec3{gaussian(), gaussian(), gaussian()} * sigma;
        sin_coef[k] = Vec3{gaussian(), gaussian(), gaussian()} * sigma;
    }

    SampledCurve curve;
    curve.closed = true;
    curve.vertices.reserve(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples);
        Vec3 p{0, 0, 0};
        for (std::size_t k = 0; k < modes; ++k) {
            const double w = static_cast<double>(k + 1) * t;
            p += cos_coef[k] * std::cos(w) + sin_coef[k] * std::sin(w);
        }
        curve.vertices.push_back(p);
    }

    const Ball ball = min_enclosing_ball_points(curve.vertices);
    for (Vec3& v : curve.vertices)
        v = (v - ball.center) / ball.radius;

    curve.meta = {{"family", "fourier_random"},
                  {"modes", std::to_string(modes)},
                  {"seed", std::to_string(seed)}};
    curve.validate();
    return curve;
}

SampledCurve gen_circle(double radius, std::size_t samples) {
    if (!(radius > 0.0))
        fail(ErrorCode::invalid_argument, "circle radius must be positive");
    require_samples(samples);
    SampledCurve curve;
    curve.closed = true;
    curve.vertices.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples);
        curve.vertices.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
    }
    curve.meta = {{"family", "circle"}, {"radius", fmt(radius)}};
    curve.validate();
    return curve;
}

SampledCurve gen_line_segment(const Vec3& from, const Vec3& to, std::size_t samples) {
    require_samples(samples);
    if (norm2(to - from) <= 0.0)
        fail(ErrorCode::invalid_argument, "line segment endpoints coincide");
    SampledCurve curve;
    curve.closed = false;
    curve.vertices.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double u = static_cast<double>(k) / static_cast<double>(samples - 1);
        curve.vertices.push_back(from + (to - from) * u);
    }
    curve.meta = {{"family", "line_segment"}};
    curve.validate();
    return curve;
}

CurveSpec CurveSpec::from_json(const nlohmann::json& j) {
    CurveSpec spec;
    try {
        spec.family = j.at("family").get<std::string>();
        spec.samples = j.at("samples").get<std::size_t>();
        if (j.contains("params"))
            spec.params = j.at("params");
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, std::string("bad curve spec: ") + e.what());
    }
    return spec;
}

nlohmann::json CurveSpec::to_json() const {
    return nlohmann::json{{"family", family}, {"samples", samples}, {"params", params}};
}

SampledCurve generate(const CurveSpec& spec) {
    const nlohmann::json& p = spec.params;
    auto num = [&](const char* key, double fallback, bool required = false) {
        if (!p.contains(key)) {
            if (required)
                fail(ErrorCode::invalid_argument,
                     "family '" + spec.family + "' needs parameter '" + key + "'");
            return fallback;
        }
        if (!p.at(key).is_number())
            fail(ErrorCode::parse, std::string("parameter '") + key + "' must be a number");
        return p.at(key).get<double>();
    };

    try {
        if (spec.family == "torus_knot") {
            return gen_torus_knot(static_cast<int>(num("p", 0, true)),
                                  static_cast<int>(num("q", 0, true)),
                                  num("major_radius", 3.0), num("minor_radius", 1.0),
                                  spec.samples);
        }
        if (spec.family == "helix_composite") {
            return gen_helix_composite(static_cast<int>(num("n", 0, true)),
                                       num("exponent", 2.0), spec.samples);
        }
        if (spec.family == "spiral") {
            return gen_spiral(num("theta_max", 0, true), spec.samples);
        }
        if (spec.family == "rounded_polygon") {
            if (!p.contains("vertices") || !p.at("vertices").is_array())
                fail(ErrorCode::invalid_argument, "rounded_polygon needs a 'vertices' array");
            std::vector<Vec3> corners;
            for (const auto& v : p.at("vertices")) {
                if (!v.is_array() || v.size() != 3)
                    fail(ErrorCode::parse, "rounded_polygon vertices must be [x,y,z] triples");
                corners.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
            }
            const bool closed = p.value("closed", false);
            return gen_rounded_polygon(corners, num("corner_radius", 0, true), spec.samples,
                                       closed);
        }
        if (spec.family == "fourier_random") {
            return gen_fourier_random(static_cast<std::size_t>(num("modes", 0, true)),
                                      static_cast<std::uint64_t>(num("seed", 0.0)),
                                      spec.samples);
        }
        if (spec.family == "circle") {
            return gen_circle(num("radius", 1.0), spec.samples);
        }
        if (spec.family == "line_segment") {
            auto point = [&](const char* key) {
                if (!p.contains(key) || !p.at(key).is_array() || p.at(key).size() != 3)
                    fail(ErrorCode::invalid_argument,
                         std::string("line_segment needs '") + key + "' as [x,y,z]");
                const auto& a = p.at(key);
                return Vec3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
            };
            return gen_line_segment(point("from"), point("to"), spec.samples);
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, std::string("bad parameters: ") + e.what());
    }
    fail(ErrorCode::invalid_argument, "unknown curve family '" + spec.family + "'");
}

}  // namespace knotcurv
