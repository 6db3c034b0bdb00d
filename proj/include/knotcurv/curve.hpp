#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "knotcurv/geom.hpp"

namespace knotcurv {

/// A space curve as an ordered polygon. Closed curves wrap implicitly:
/// the last vertex is never a duplicate of the first.
struct SampledCurve {
    std::vector<Vec3> vertices;
    bool closed = false;
    std::map<std::string, std::string> meta;

    std::size_t size() const { return vertices.size(); }
    /// Number of edges (includes the wraparound edge when closed).
    std::size_t edge_count() const { return closed ? vertices.size() : vertices.size() - 1; }

    const Vec3& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }

    /// Throws Error(invalid_curve) when an invariant fails: fewer than
    /// 3 vertices, a zero-length edge, a duplicated closing vertex, or a
    /// non-finite coordinate.
    void validate() const;
};

/// Cumulative arclength and unit edge tangents for one curve.
struct ArcTable {
    std::vector<double> cumulative;  // cumulative[i] = arclength from vertex 0 to vertex i
    std::vector<Vec3> tangents;      // tangents[i] = unit direction of edge (i, i+1)
    std::vector<double> edge_len;    // edge_len[i] = length of edge (i, i+1)
    double total = 0.0;
    bool closed = false;

    std::size_t edge_count() const { return tangents.size(); }
};

ArcTable build_arc_table(const SampledCurve& curve);

/// Intrinsic distance between vertices i and j: the shorter arc route for
/// closed curves, |s_i - s_j| for open ones. Always >= chord length.
double arc_distance(const ArcTable& table, std::size_t i, std::size_t j);

/// Arc distance between two arclength positions (used for midpoints).
double arc_distance_s(const ArcTable& table, double si, double sj);

/// Point on the curve at arclength s (s clamped to [0, total]; closed
/// curves wrap).
Vec3 point_at_arclength(const SampledCurve& curve, const ArcTable& table, double s);

/// Equal-arclength resampling to n vertices. Open curves keep their
/// endpoints exactly; the output polygon is inscribed in the input.
SampledCurve resample(const SampledCurve& curve, std::size_t n);

/// Smallest enclosing ball of the curve's vertices (Welzl, exact up to
/// floating point).
Ball min_enclosing_ball(const SampledCurve& curve);
Ball min_enclosing_ball_points(const std::vector<Vec3>& points);

}  // namespace knotcurv
