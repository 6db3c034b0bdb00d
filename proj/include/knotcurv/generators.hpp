#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotcurv/curve.hpp"

namespace knotcurv {

/// Declarative description of a generator family. `params` carries the
/// family-specific keys documented per generator below.
struct CurveSpec {
    std::string family;  // torus_knot | helix_composite | spiral | rounded_polygon |
                         // fourier_random | circle | line_segment
    nlohmann::json params = nlohmann::json::object();
    std::size_t samples = 0;

    static CurveSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Dispatches on spec.family. Generators are deterministic functions of
/// their spec.
SampledCurve generate(const CurveSpec& spec);

/// Closed curve on the standard torus, p meridional and q longitudinal
/// windings. Requires gcd(p,q)=1, p,q >= 1, 0 < minor < major.
SampledCurve gen_torus_knot(int p, int q, double major_radius, double minor_radius,
                            std::size_t samples);

/// Closed composite of a circular helix with height slope n^exponent, its
/// cylinder axis, and two connector arcs of total curvature close to 2*pi
/// each. n must be odd and >= 3. Measured per-piece curvatures land in the
/// curve meta (kappa_helix, kappa_axis, kappa_connector1, kappa_connector2).
SampledCurve gen_helix_composite(int n, double exponent, std::size_t samples);

/// Open planar curve r = 3 - 1/theta in polar coordinates, theta in
/// [1, theta_max], in the z = 0 plane.
SampledCurve gen_spiral(double theta_max, std::size_t samples);

/// Rounds every corner of a right-angled polygonal path with a
/// quarter-circle of the given radius. Consecutive edges must be
/// orthogonal within 1e-9; the radius must be under half the shortest
/// edge.
SampledCurve gen_rounded_polygon(const std::vector<Vec3>& corners, double corner_radius,
                                 std::size_t samples, bool closed = false);

/// Random closed trigonometric curve with the given number of modes,
/// recentred and rescaled to a unit min-enclosing-ball. Deterministic in
/// the seed (fixed mt19937_64 + Box-Muller stream).
SampledCurve gen_fourier_random(std::size_t modes, std::uint64_t seed, std::size_t samples);

SampledCurve gen_circle(double radius, std::size_t samples);

SampledCurve gen_line_segment(const Vec3& from, const Vec3& to, std::size_t samples);

}  // namespace knotcurv
