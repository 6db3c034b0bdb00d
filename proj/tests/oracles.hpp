// Test-only oracles: independent routes to the quantities the library
// computes. Everything here goes through 1D quadrature, exhaustive
// search, or direct counting; nothing reuses the implementation kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "knotcurv/curve.hpp"

namespace oracles {

inline constexpr double kPi = std::numbers::pi;

/// Composite Simpson on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0)
        ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        sum += f(a + h * i) * (i % 2 == 0 ? 2.0 : 4.0);
    return sum * h / 3.0;
}

/// Total curvature of a parametric curve from its analytic derivatives:
/// integral of |g' x g''| / |g'|^2 dt.
inline double parametric_total_curvature(const std::function<knotcurv::Vec3(double)>& d1,
                                         const std::function<knotcurv::Vec3(double)>& d2,
                                         double t0, double t1, int n) {
    return simpson(
        [&](double t) {
            const knotcurv::Vec3 v = d1(t), a = d2(t);
            return knotcurv::norm(knotcurv::cross(v, a)) / knotcurv::norm2(v);
        },
        t0, t1, n);
}

/// Torus-knot curvature by quadrature of the explicit parametrization.
inline double torus_knot_curvature(int p, int q, double R, double r, int n = 200000) {
    auto d1 = [=](double t) {
        const double rho = R + r * std::cos(p * t);
        const double drho = -r * p * std::sin(p * t);
        return knotcurv::Vec3{drho * std::cos(q * t) - rho * q * std::sin(q * t),
                              drho * std::sin(q * t) + rho * q * std::cos(q * t),
                              r * p * std::cos(p * t)};
    };
    auto d2 = [=](double t) {
        const double rho = R + r * std::cos(p * t);
        const double drho = -r * p * std::sin(p * t);
        const double ddrho = -r * p * p * std::cos(p * t);
        return knotcurv::Vec3{
            ddrho * std::cos(q * t) - 2.0 * drho * q * std::sin(q * t) -
                rho * q * q * std::cos(q * t),
            ddrho * std::sin(q * t) + 2.0 * drho * q * std::cos(q * t) -
                rho * q * q * std::sin(q * t),
            -r * p * p * std::sin(p * t)};
    };
    return parametric_total_curvature(d1, d2, 0.0, 2.0 * kPi, n);
}

/// Spiral r = 3 - 1/theta: total curvature by quadrature of the polar
/// curvature formula |r^2 + 2r'^2 - r r''| / (r^2 + r'^2)^(3/2) * ds.
inline double spiral_curvature(double theta_max, int n = 400000) {
    return simpson(
        [](double th) {
            const double r = 3.0 - 1.0 / th;
            const double r1 = 1.0 / (th * th);
            const double r2 = -2.0 / (th * th * th);
            const double speed2 = r * r + r1 * r1;
            const double curv = std::abs(r * r + 2.0 * r1 * r1 - r * r2) / std::pow(speed2, 1.5);
            return curv * std::sqrt(speed2);
        },
        1.0, theta_max, n);
}

/// Spiral illumination of the origin by quadrature: integral of
/// sqrt(r^2+r'^2)/r^2 dtheta.
inline double spiral_illumination(double theta_max, int n = 400000) {
    return simpson(
        [](double th) {
            const double r = 3.0 - 1.0 / th;
            const double r1 = 1.0 / (th * th);
            return std::sqrt(r * r + r1 * r1) / (r * r);
        },
        1.0, theta_max, n);
}

/// Mobius energy of the round circle by 1D quadrature (the integrand
/// extends continuously to 1/12 at zero separation).
inline double circle_mobius_energy(int n = 200000) {
    auto f = [](double th) {
        if (th < 1e-8)
            return 1.0 / 12.0;
        const double s = 2.0 * std::sin(0.5 * th);
        return 1.0 / (s * s) - 1.0 / (th * th);
    };
    return 2.0 * kPi * 2.0 * simpson(f, 0.0, kPi, n);
}

/// Curvature of the ellipse c + A cos t + B sin t recovered from equally
/// spaced samples of a closed curve (exact for a pure one-mode signal).
inline double sampled_ellipse_curvature(const knotcurv::SampledCurve& curve, int n = 200000) {
    const std::size_t m = curve.size();
    knotcurv::Vec3 A{0, 0, 0}, B{0, 0, 0};
    for (std::size_t k = 0; k < m; ++k) {
        const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
        A += curve.vertices[k] * (2.0 / static_cast<double>(m) * std::cos(t));
        B += curve.vertices[k] * (2.0 / static_cast<double>(m) * std::sin(t));
    }
    auto d1 = [&](double t) { return B * std::cos(t) - A * std::sin(t); };
    auto d2 = [&](double t) { return A * (-std::cos(t)) - B * std::sin(t); };
    return parametric_total_curvature(d1, d2, 0.0, 2.0 * kPi, n);
}

/// Brute-force polygonal thickness: triple circumradii plus a dense
/// doubly-critical scan (grid local minima of the segment-pair distance,
/// computed with a rolling three-row window to stay within memory).
inline double brute_force_thickness(const knotcurv::SampledCurve& curve) {
    const std::size_t n = curve.size();
    double min_rad = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        min_rad = std::min(min_rad,
                           knotcurv::circumradius(curve.vertex(i + n - 1), curve.vertices[i],
                                                  curve.vertex(i + 1)));

    auto adjacent = [&](std::size_t i, std::size_t j) {
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        return i == j || hi - lo == 1 || (lo == 0 && hi == n - 1);
    };
    const knotcurv::ArcTable table = knotcurv::build_arc_table(curve);
    auto compute_row = [&](std::size_t i, std::vector<double>& row) {
        // entry = pair distance, or +inf for adjacent pairs and for the
        // near-diagonal trough, where the chord between the realizing
        // points just tracks their arclength separation
        row.assign(n, std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < n; ++j) {
            if (adjacent(i, j))
                continue;
            const knotcurv::SegmentClosest cp = knotcurv::closest_segment_segment(
                curve.vertices[i], curve.vertex(i + 1), curve.vertices[j], curve.vertex(j + 1));
            const double d = std::sqrt(cp.dist2);
            const double si = table.cumulative[i] + cp.s * table.edge_len[i];
            const double sj = table.cumulative[j] + cp.t * table.edge_len[j];
            if (d <= 0.9 * knotcurv::arc_distance_s(table, si, sj))
                row[j] = d;
        }
    };

    double dcsd = std::numeric_limits<double>::infinity();
    std::vector<double> prev, cur, next;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            compute_row((i + n - 1) % n, prev);
            compute_row(i, cur);
        } else {
            prev.swap(cur);
            cur.swap(next);
        }
        compute_row((i + 1) % n, next);
        for (std::size_t j = 0; j < n; ++j) {
            const double here = cur[j];
            if (!std::isfinite(here) || here >= dcsd)
                continue;
            bool local_min = true;
            for (const std::vector<double>* row : {&prev, &cur, &next})
                for (int dj = -1; dj <= 1; ++dj)
                    if ((*row)[(j + n + dj) % n] < here - 1e-12)
                        local_min = false;
            if (local_min)
                dcsd = here;
        }
    }
    return std::min(min_rad, 0.5 * dcsd);
}

struct JumpInterval {
    std::size_t start, end;
};

/// All jump intervals <n ... n+2 ... n> in a label sequence.
inline std::vector<JumpInterval> all_jumps(const std::vector<int>& labels, int n) {
    std::vector<JumpInterval> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != n)
            continue;
        bool seen_peak = false;
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[j] >= n + 2)
                seen_peak = true;
            if (labels[j] == n && seen_peak)
                out.push_back({i, j});
        }
    }
    return out;
}

/// Exhaustive maximum over subsets of pairwise non-overlapping jumps
/// (intervals may share one endpoint).
inline long long exhaustive_max_jumps(const std::vector<int>& labels, int n) {
    const std::vector<JumpInterval> jumps = all_jumps(labels, n);
    const std::size_t m = jumps.size();
    if (m > 22)
        return -1;  // caller should pick smaller instances
    long long best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        long long count = 0;
        bool ok = true;
        for (std::size_t a = 0; a < m && ok; ++a) {
            if (!(mask & (std::size_t{1} << a)))
                continue;
            ++count;
            for (std::size_t b = a + 1; b < m && ok; ++b) {
                if (!(mask & (std::size_t{1} << b)))
                    continue;
                const auto& ja = jumps[a];
                const auto& jb = jumps[b];
                const std::size_t lo = std::max(ja.start, jb.start);
                const std::size_t hi = std::min(ja.end, jb.end);
                if (lo < hi || (lo == hi && !(ja.end == jb.start || jb.end == ja.start)))
                    ok = false;
            }
        }
        if (ok)
            best = std::max(best, count);
    }
    return best;
}

}  // namespace oracles
