#include "knotcurv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "knotcurv/error.hpp"
#include "knotcurv/parallel.hpp"

namespace knotcurv {

namespace {

constexpr double kPi = std::numbers::pi;

// Precomputed per-edge data shared by the pairwise kernels.
struct EdgeData {
    std::vector<Vec3> mid;
    std::vector<Vec3> tan;
    std::vector<double> len;
    std::vector<double> mid_s;  // arclength position of each midpoint
    double total = 0.0;
    bool closed = false;

    std::size_t count() const { return mid.size(); }

    bool adjacent(std::size_t i, std::size_t j) const {
        if (i == j)
            return true;
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        if (hi - lo == 1)
            return true;
        return closed && lo == 0 && hi == count() - 1;
    }

    double arc(std::size_t i, std::size_t j) const {
        double d = std::abs(mid_s[i] - mid_s[j]);
        if (closed)
            d = std::min(d, total - d);
        return d;
    }
};

EdgeData make_edge_data(const SampledCurve& curve, const ArcTable& table) {
    EdgeData e;
    e.closed = curve.closed;
    e.total = table.total;
    const std::size_t n = table.edge_count();
    e.mid.resize(n);
    e.tan = table.tangents;
    e.len = table.edge_len;
    e.mid_s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        e.mid[i] = (curve.vertices[i] + curve.vertex(i + 1)) * 0.5;
        e.mid_s[i] = table.cumulative[i] + 0.5 * table.edge_len[i];
    }
    return e;
}

// Width of the excluded near-diagonal band, as (arclength)^2: ordered pairs
// that share a vertex or coincide.
double band_area(const EdgeData& e) {
    double area = 0.0;
    const std::size_t n = e.count();
    for (std::size_t i = 0; i < n; ++i)
        area += e.len[i] * e.len[i];
    const std::size_t pairs = e.closed ? n : n - 1;
    for (std::size_t i = 0; i < pairs; ++i)
        area += 2.0 * e.len[i] * e.len[(i + 1) % n];
    return area;
}

void require_closed(const SampledCurve& curve, const char* op) {
    if (!curve.closed)
        fail(ErrorCode::precondition, std::string(op) + " requires a closed curve");
}

}  // namespace

double total_curvature(const SampledCurve& curve) {
    const ArcTable table = build_arc_table(curve);
    const std::size_t edges = table.edge_count();
    double kappa = 0.0;
    if (curve.closed) {
        for (std::size_t i = 0; i < edges; ++i)
            kappa += angle_between(table.tangents[(i + edges - 1) % edges], table.tangents[i]);
    } else {
        for (std::size_t i = 1; i < edges; ++i)
            kappa += angle_between(table.tangents[i - 1], table.tangents[i]);
    }
    return kappa;
}

ThicknessDetail thickness_detail(const SampledCurve& curve) {
    require_closed(curve, "thickness_radius");
    const ArcTable table = build_arc_table(curve);
    const std::size_t n = curve.size();

    ThicknessDetail out;
    out.min_rad = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            circumradius(curve.vertex(i + n - 1), curve.vertices[i], curve.vertex(i + 1));
        if (r < out.min_rad)
            out.min_rad = r;
    }

    // Doubly-critical pair search over all non-adjacent segment pairs. A
    // realizer interior to its segment is perpendicular to it by
    // construction; a realizer at a vertex is critical when the distance
    // is non-decreasing along both incident edges.
    const double slack = 1e-9;
    out.dcsd = std::numeric_limits<double>::infinity();
    out.min_gap = std::numeric_limits<double>::infinity();

    auto vertex_critical = [&](std::size_t vertex, const Vec3& toward) -> bool {
        const double c = norm(toward);
        if (c <= 0.0)
            return true;
        const std::size_t edges = table.edge_count();
        // Outgoing edge exists except at an open curve's last vertex.
        if (curve.closed || vertex < edges) {
            const Vec3& t_out = table.tangents[vertex % edges];
            if (dot(toward, t_out) > slack * c)
                return false;
        }
        if (curve.closed || vertex > 0) {
            const Vec3& t_in = table.tangents[(vertex + edges - 1) % edges];
            if (dot(toward, t_in) < -slack * c)
                return false;
        }
        return true;
    };

    const std::size_t edges = table.edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec3& p0 = curve.vertices[i];
        const Vec3 p1 = curve.vertex(i + 1);
        for (std::size_t j = i + 2; j < edges; ++j) {
            if (curve.closed && i == 0 && j == edges - 1)
                continue;
            const Vec3& q0 = curve.vertices[j];
            const Vec3 q1 = curve.vertex(j + 1);
            const SegmentClosest cp = closest_segment_segment(p0, p1, q0, q1);
            const double d = std::sqrt(cp.dist2);
            if (d < out.min_gap) {
                out.min_gap = d;
                out.gap_seg_a = i;
                out.gap_seg_b = j;
            }
            if (d >= out.dcsd)
                continue;
            const Vec3 x = p0 + (p1 - p0) * cp.s;
            const Vec3 y = q0 + (q1 - q0) * cp.t;
            const double param_eps = 1e-12;
            bool crit_x = true, crit_y = true;
            if (cp.s <= param_eps)
                crit_x = vertex_critical(i, y - x);
            else if (cp.s >= 1.0 - param_eps)
                crit_x = vertex_critical((i + 1) % n, y - x);
            if (crit_x) {
                if (cp.t <= param_eps)
                    crit_y = vertex_critical(j, x - y);
                else if (cp.t >= 1.0 - param_eps)
                    crit_y = vertex_critical((j + 1) % n, x - y);
            }
            if (crit_x && crit_y) {
                out.dcsd = d;
                out.dcsd_seg_a = i;
                out.dcsd_seg_b = j;
            }
        }
    }

    if (out.min_gap <= 1e-12 * table.total)
        fail(ErrorCode::self_intersection,
             "curve self-intersects: segments " + std::to_string(out.gap_seg_a) + " and " +
                 std::to_string(out.gap_seg_b) + " are at distance " +
                 std::to_string(out.min_gap));

    out.radius = std::min(out.min_rad, 0.5 * out.dcsd);
    if (!std::isfinite(out.radius))
        fail(ErrorCode::precondition, "thickness undefined: no curvature and no critical pair");
    return out;
}

double thickness_radius(const SampledCurve& curve) { return thickness_detail(curve).radius; }

double ropelength(const SampledCurve& curve) {
    const ArcTable table = build_arc_table(curve);
    return table.total / thickness_radius(curve);
}

PairIntegrals pair_integrals(const SampledCurve& curve, const InvariantOptions& opts) {
    require_closed(curve, "pair_integrals");
    const ThicknessDetail thick = thickness_detail(curve);  // also rejects self-intersections
    const ArcTable table = build_arc_table(curve);
    const EdgeData e = make_edge_data(curve, table);
    const std::size_t n = e.count();
    const double R = thick.radius;
    const double near_threshold = kPi * R;

    struct Row {
        double abs_sum, signed_sum, mob_sum, near_sum, far_sum;
    };
    std::vector<Row> rows(n);

    parallel_for(n, opts.workers, [&](std::size_t i) {
        Row r{0.0, 0.0, 0.0, 0.0, 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            if (e.adjacent(i, j))
                continue;
            const Vec3 d = e.mid[i] - e.mid[j];
            const double d2 = norm2(d);
            const double dn = std::sqrt(d2);
            const double w = e.len[i] * e.len[j];
            const double tp = triple(e.tan[i], e.tan[j], d) / (d2 * dn) * w;
            const double arc = e.arc(i, j);
            const double abs_tp = std::abs(tp);
            r.abs_sum += abs_tp;
            r.signed_sum += tp;
            r.mob_sum += (1.0 / d2 - 1.0 / (arc * arc)) * w;
            if (arc <= near_threshold)
                r.near_sum += abs_tp;
            else
                r.far_sum += abs_tp;
        }
        rows[i] = r;
    });

    auto reduce = [&](auto member) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = rows[i].*member;
        return pairwise_sum(v);
    };

    PairIntegrals out;
    out.thickness = R;
    // Unordered sums cover each ordered pair once; the integrals are
    // symmetric, so double them.
    out.acn = 2.0 * reduce(&Row::abs_sum) / (4.0 * kPi);
    out.writhe = 2.0 * reduce(&Row::signed_sum) / (4.0 * kPi);
    out.mobius_energy = 2.0 * reduce(&Row::mob_sum);
    out.near = 2.0 * reduce(&Row::near_sum);
    out.far = 2.0 * reduce(&Row::far_sum);

    // Excluded shared-vertex band, bounded by the near-band pointwise
    // bound (pi/4)(pi/2)^2 / R^2.
    const double area = band_area(e);
    const double near_bound = (kPi / 4.0) * (kPi / 2.0) * (kPi / 2.0) / (R * R);
    out.near_band_error = area * near_bound;
    out.acn_band_error = out.near_band_error / (4.0 * kPi);
    out.writhe_band_error = out.acn_band_error;

    // Mobius integrand on the band via the Schur chord bound; the bound
    // grows with arc separation, so evaluate at the widest excluded arc.
    double w_max = 0.0;
    const std::size_t adj = e.closed ? n : n - 1;
    for (std::size_t i = 0; i < adj; ++i)
        w_max = std::max(w_max, 0.5 * (e.len[i] + e.len[(i + 1) % n]));
    w_max = std::min(w_max, 0.999 * kPi * R);
    const double sin_term = 2.0 * R * std::sin(w_max / (2.0 * R));
    const double mob_bound =
        std::max(0.0, 1.0 / (sin_term * sin_term) - 1.0 / (w_max * w_max));
    out.mobius_band_error = area * std::max(mob_bound, 1.0 / (12.0 * R * R));
    return out;
}

ScalarWithError acn(const SampledCurve& curve, const InvariantOptions& opts) {
    const PairIntegrals p = pair_integrals(curve, opts);
    return {p.acn, p.acn_band_error};
}

ScalarWithError writhe(const SampledCurve& curve, const InvariantOptions& opts) {
    const PairIntegrals p = pair_integrals(curve, opts);
    return {p.writhe, p.writhe_band_error};
}

ScalarWithError mobius_energy(const SampledCurve& curve, const InvariantOptions& opts) {
    const PairIntegrals p = pair_integrals(curve, opts);
    return {p.mobius_energy, p.mobius_band_error};
}

NearFarSplit near_far_split(const SampledCurve& curve, const InvariantOptions& opts) {
    const PairIntegrals p = pair_integrals(curve, opts);
    return {p.near, p.far, p.near_band_error};
}

ScalarWithError illumination(const SampledCurve& curve, const Vec3& basepoint) {
    const ArcTable table = build_arc_table(curve);
    const std::size_t n = table.edge_count();
    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& a = curve.vertices[i];
        const Vec3 b = curve.vertex(i + 1);
        const double dmin = closest_point_segment(basepoint, a, b).dist;
        if (dmin < 1e-9)
            fail(ErrorCode::precondition,
                 "basepoint lies on the curve (distance " + std::to_string(dmin) +
                     " at segment " + std::to_string(i) + ")");
        const Vec3 mid = (a + b) * 0.5;
        const double len = table.edge_len[i];
        value += len / norm2(mid - basepoint);
        // Midpoint-rule remainder: |f''| <= 10 / dmin^4 along the segment.
        error += len * len * len * 10.0 / (24.0 * dmin * dmin * dmin * dmin);
    }
    return {value, error};
}

InvariantReport compute_invariants(const SampledCurve& curve, const InvariantOptions& opts) {
    const ArcTable table = build_arc_table(curve);
    InvariantReport report;
    report.length = table.total;
    report.total_curvature = total_curvature(curve);

    if (curve.closed) {
        const PairIntegrals p = pair_integrals(curve, opts);
        report.thickness = p.thickness;
        report.ropelength = table.total / p.thickness;
        report.acn = p.acn;
        report.writhe = p.writhe;
        report.mobius_energy = p.mobius_energy;
        report.near = p.near;
        report.far = p.far;
        report.error_estimates["acn"] = p.acn_band_error;
        report.error_estimates["writhe"] = p.writhe_band_error;
        report.error_estimates["mobius_energy"] = p.mobius_band_error;
        report.error_estimates["near"] = p.near_band_error;
        report.error_estimates["far"] = 0.0;

        if (opts.refine) {
            InvariantOptions sub = opts;
            sub.refine = false;
            const SampledCurve fine = resample(curve, 2 * curve.size());
            const PairIntegrals q = pair_integrals(fine, sub);
            report.error_estimates["acn_refine"] = std::abs(q.acn - p.acn);
            report.error_estimates["writhe_refine"] = std::abs(q.writhe - p.writhe);
            report.error_estimates["mobius_energy_refine"] =
                std::abs(q.mobius_energy - p.mobius_energy);
            report.error_estimates["near_refine"] = std::abs(q.near - p.near);
            report.error_estimates["far_refine"] = std::abs(q.far - p.far);
        }
    } else if (opts.refine) {
        const SampledCurve fine = resample(curve, 2 * curve.size());
        report.error_estimates["total_curvature_refine"] =
            std::abs(total_curvature(fine) - report.total_curvature);
    }
    return report;
}

namespace {

// 2D orientation with a degeneracy margin; returns 0 when too close to call.
int orient_2d(double ax, double ay, double bx, double by, double cx, double cy, bool* degenerate) {
    const double ux = bx - ax, uy = by - ay;
    const double vx = cx - ax, vy = cy - ay;
    const double det = ux * vy - uy * vx;
    const double scale = std::sqrt((ux * ux + uy * uy) * (vx * vx + vy * vy));
    if (std::abs(det) <= 1e-12 * scale) {
        *degenerate = true;
        return 0;
    }
    return det > 0.0 ? 1 : -1;
}

struct Projected {
    std::vector<double> px, py;
};

// Transversal interior crossings of the projected polygon along `dir`;
// returns false when the projection is degenerate.
bool count_projection_crossings(const SampledCurve& curve, const Vec3& dir, long long* count) {
    const Vec3 u = any_orthogonal(dir);
    const Vec3 v = cross(dir, u);
    const std::size_t n = curve.size();
    const std::size_t edges = curve.edge_count();

    Projected pr;
    pr.px.resize(n);
    pr.py.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        pr.px[i] = dot(curve.vertices[i], u);
        pr.py[i] = dot(curve.vertices[i], v);
    }

    struct SegRef {
        double xmin, xmax, ymin, ymax;
        std::uint32_t idx;
    };
    std::vector<SegRef> segs(edges);
    for (std::size_t i = 0; i < edges; ++i) {
        const std::size_t a = i, b = (i + 1) % n;
        segs[i] = {std::min(pr.px[a], pr.px[b]), std::max(pr.px[a], pr.px[b]),
                   std::min(pr.py[a], pr.py[b]), std::max(pr.py[a], pr.py[b]),
                   static_cast<std::uint32_t>(i)};
    }
    std::sort(segs.begin(), segs.end(),
              [](const SegRef& a, const SegRef& b) { return a.xmin < b.xmin; });

    long long crossings = 0;
    for (std::size_t si = 0; si < edges; ++si) {
        const SegRef& A = segs[si];
        const std::size_t ia = A.idx, ia2 = (ia + 1) % n;
        for (std::size_t sj = si + 1; sj < edges; ++sj) {
            const SegRef& B = segs[sj];
            if (B.xmin > A.xmax)
                break;
            if (B.ymin > A.ymax || B.ymax < A.ymin)
                continue;
            const std::size_t ib = B.idx, ib2 = (ib + 1) % n;
            // Segments sharing a vertex meet at that vertex in every
            // projection; that is not a crossing.
            const std::size_t lo = std::min<std::size_t>(ia, ib), hi = std::max<std::size_t>(ia, ib);
            if (hi - lo == 1 || (curve.closed && lo == 0 && hi == edges - 1))
                continue;
            bool degenerate = false;
            const int o1 = orient_2d(pr.px[ia], pr.py[ia], pr.px[ia2], pr.py[ia2], pr.px[ib],
                                     pr.py[ib], &degenerate);
            const int o2 = orient_2d(pr.px[ia], pr.py[ia], pr.px[ia2], pr.py[ia2], pr.px[ib2],
                                     pr.py[ib2], &degenerate);
            if (degenerate)
                return false;
            if (o1 == o2)
                continue;
            const int o3 = orient_2d(pr.px[ib], pr.py[ib], pr.px[ib2], pr.py[ib2], pr.px[ia],
                                     pr.py[ia], &degenerate);
            const int o4 = orient_2d(pr.px[ib], pr.py[ib], pr.px[ib2], pr.py[ib2], pr.px[ia2],
                                     pr.py[ia2], &degenerate);
            if (degenerate)
                return false;
            if (o3 != o4)
                ++crossings;
        }
    }
    *count = crossings;
    return true;
}

Vec3 rotate_about(const Vec3& x, const Vec3& axis, double angle) {
    // Rodrigues' formula, axis assumed unit.
    const double c = std::cos(angle), s = std::sin(angle);
    return x * c + cross(axis, x) * s + axis * (dot(axis, x) * (1.0 - c));
}

}  // namespace

OracleResult projection_crossing_oracle(const SampledCurve& curve, std::size_t directions,
                                        std::uint64_t seed, unsigned workers) {
    require_closed(curve, "projection_crossing_oracle");
    if (directions < 1)
        fail(ErrorCode::invalid_argument, "need at least one direction");
    {
        const ThicknessDetail t = thickness_detail(curve);  // embeddedness check
        (void)t;
    }

    std::vector<Vec3> dirs(directions);
    std::mt19937_64 rng(seed);
    auto unit_double = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (std::size_t k = 0; k < directions; ++k) {
        const double z = 1.0 - 2.0 * unit_double();
        const double phi = 2.0 * kPi * unit_double();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        dirs[k] = {r * std::cos(phi), r * std::sin(phi), z};
    }

    std::vector<double> counts(directions, 0.0);
    std::vector<unsigned> retries(directions, 0);
    std::vector<char> failed(directions, 0);

    parallel_for(directions, workers, [&](std::size_t k) {
        Vec3 d = dirs[k];
        const Vec3 axis = any_orthogonal(d);
        for (unsigned attempt = 0; attempt < 64; ++attempt) {
            long long c = 0;
            if (count_projection_crossings(curve, d, &c)) {
                counts[k] = static_cast<double>(c);
                retries[k] = attempt;
                return;
            }
            // Deterministic re-aim: 1e-6 rad about a rotating axis.
            const Vec3 ax = rotate_about(axis, dirs[k], 2.39996322972865 * (attempt + 1));
            d = normalized(rotate_about(dirs[k], ax, 1e-6 * (attempt + 1)));
        }
        failed[k] = 1;
    });

    OracleResult out;
    out.directions = directions;
    out.counts.reserve(directions);
    for (std::size_t k = 0; k < directions; ++k) {
        if (failed[k])
            fail(ErrorCode::precondition,
                 "persistent degenerate projection for direction " + std::to_string(k));
        out.retries += retries[k];
        out.counts.push_back(static_cast<long long>(counts[k]));
    }
    out.mean = pairwise_sum(counts) / static_cast<double>(directions);
    out.min_observed = *std::min_element(out.counts.begin(), out.counts.end());
    return out;
}

PointwiseCheck check_schur_chord(const SampledCurve& curve, double thickness, double rel_tol) {
    const ArcTable table = build_arc_table(curve);
    PointwiseCheck out;
    out.name = "schur_chord";
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double arc = arc_distance(table, i, j);
            if (arc > kPi * thickness)
                continue;
            const double chord = dist(curve.vertices[i], curve.vertices[j]);
            const double bound = 2.0 * thickness * std::sin(arc / (2.0 * thickness));
            ++out.checked;
            const double ratio = bound <= 0.0 ? 0.0 : (bound - chord) / bound;
            if (ratio > out.worst_ratio) {
                out.worst_ratio = ratio;
                out.worst_a = i;
                out.worst_b = j;
            }
        }
    }
    out.pass = out.worst_ratio <= rel_tol;
    return out;
}

PointwiseCheck check_near_integrand_bound(const SampledCurve& curve, double thickness,
                                          double rel_tol) {
    const ArcTable table = build_arc_table(curve);
    const EdgeData e = make_edge_data(curve, table);
    PointwiseCheck out;
    out.name = "near_integrand_bound";
    const double bound = (kPi / 4.0) * (kPi / 2.0) * (kPi / 2.0) / (thickness * thickness);
    const std::size_t n = e.count();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (e.adjacent(i, j) || e.arc(i, j) > kPi * thickness)
                continue;
            const Vec3 d = e.mid[i] - e.mid[j];
            const double dn = norm(d);
            const double f = std::abs(triple(e.tan[i], e.tan[j], d)) / (dn * dn * dn);
            ++out.checked;
            const double ratio = (f - bound) / bound;
            if (ratio > out.worst_ratio) {
                out.worst_ratio = ratio;
                out.worst_a = i;
                out.worst_b = j;
            }
        }
    }
    out.pass = out.worst_ratio <= rel_tol;
    return out;
}

PointwiseCheck check_circumradius_bound(const SampledCurve& curve, double thickness,
                                        double rel_tol) {
    PointwiseCheck out;
    out.name = "circumradius_bound";
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            circumradius(curve.vertex(i + n - 1), curve.vertices[i], curve.vertex(i + 1));
        ++out.checked;
        const double ratio = (thickness - r) / thickness;
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.worst_a = i;
            out.worst_b = i;
        }
    }
    out.pass = out.worst_ratio <= rel_tol;
    return out;
}

PointwiseCheck check_gap_bound(const SampledCurve& curve, double thickness, double rel_tol) {
    const ArcTable table = build_arc_table(curve);
    PointwiseCheck out;
    out.name = "gap_bound";
    const std::size_t n = curve.size();
    const double two_r = 2.0 * thickness;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (arc_distance(table, i, j) < kPi * thickness)
                continue;
            const double chord = dist(curve.vertices[i], curve.vertices[j]);
            ++out.checked;
            const double ratio = (two_r - chord) / two_r;
            if (ratio > out.worst_ratio) {
                out.worst_ratio = ratio;
                out.worst_a = i;
                out.worst_b = j;
            }
        }
    }
    out.pass = out.worst_ratio <= rel_tol;
    return out;
}

}  // namespace knotcurv
