#include "knotcurv/curve.hpp"

#include <algorithm>
#include <cmath>

#include "knotcurv/error.hpp"

namespace knotcurv {

void SampledCurve::validate() const {
    if (vertices.size() < 3)
        fail(ErrorCode::invalid_curve, "curve needs at least 3 vertices, got " +
                                           std::to_string(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!finite(vertices[i]))
            fail(ErrorCode::invalid_curve, "non-finite coordinate at vertex " + std::to_string(i));
    }
    const std::size_t edges = edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec3& a = vertices[i];
        const Vec3& b = vertex(i + 1);
        if (a == b) {
            if (closed && i + 1 == vertices.size())
                fail(ErrorCode::invalid_curve,
                     "closed curve duplicates its first vertex at the end; wraparound is implicit");
            fail(ErrorCode::invalid_curve, "zero-length edge between vertices " +
                                               std::to_string(i) + " and " +
                                               std::to_string(i + 1));
        }
    }
}

ArcTable build_arc_table(const SampledCurve& curve) {
    curve.validate();
    const std::size_t n = curve.size();
    const std::size_t edges = curve.edge_count();

    ArcTable table;
    table.closed = curve.closed;
    table.cumulative.resize(n);
    table.tangents.resize(edges);
    table.edge_len.resize(edges);

    double s = 0.0;
    table.cumulative[0] = 0.0;
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec3 d = curve.vertex(i + 1) - curve.vertices[i];
        const double len = norm(d);
        if (!(len > 0.0) || !std::isfinite(len))
            fail(ErrorCode::invalid_curve, "degenerate edge at index " + std::to_string(i));
        table.tangents[i] = d / len;
        table.edge_len[i] = len;
        s += len;
        if (i + 1 < n)
            table.cumulative[i + 1] = s;
    }
    table.total = s;
    return table;
}

double arc_distance(const ArcTable& table, std::size_t i, std::size_t j) {
    const std::size_t n = table.cumulative.size();
    if (i >= n || j >= n)
        fail(ErrorCode::invalid_argument, "vertex index out of range");
    return arc_distance_s(table, table.cumulative[i], table.cumulative[j]);
}

double arc_distance_s(const ArcTable& table, double si, double sj) {
    double d = std::abs(si - sj);
    if (table.closed)
        d = std::min(d, table.total - d);
    return d;
}

Vec3 point_at_arclength(const SampledCurve& curve, const ArcTable& table, double s) {
    if (table.closed) {
        s = std::fmod(s, table.total);
        if (s < 0.0)
            s += table.total;
    } else {
        s = std::clamp(s, 0.0, table.total);
    }
    // Locate the edge containing s.
    const auto it = std::upper_bound(table.cumulative.begin(), table.cumulative.end(), s);
    std::size_t e = static_cast<std::size_t>(it - table.cumulative.begin());
    e = (e == 0) ? 0 : e - 1;
    if (e >= table.edge_count())
        e = table.edge_count() - 1;
    const double local = s - table.cumulative[e];
    return curve.vertices[e] + table.tangents[e] * local;
}

SampledCurve resample(const SampledCurve& curve, std::size_t n) {
    if (n < 3)
        fail(ErrorCode::invalid_argument, "resample needs n >= 3, got " + std::to_string(n));
    const ArcTable table = build_arc_table(curve);

    SampledCurve out;
    out.closed = curve.closed;
    out.meta = curve.meta;
    out.vertices.reserve(n);

    if (curve.closed) {
        const double step = table.total / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k)
            out.vertices.push_back(point_at_arclength(curve, table, step * static_cast<double>(k)));
    } else {
        const double step = table.total / static_cast<double>(n - 1);
        out.vertices.push_back(curve.vertices.front());
        for (std::size_t k = 1; k + 1 < n; ++k)
            out.vertices.push_back(point_at_arclength(curve, table, step * static_cast<double>(k)));
        out.vertices.push_back(curve.vertices.back());
    }
    out.validate();
    return out;
}

Ball min_enclosing_ball(const SampledCurve& curve) {
    curve.validate();
    return min_enclosing_ball_points(curve.vertices);
}

}  // namespace knotcurv
