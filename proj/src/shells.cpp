#include "knotcurv/shells.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "knotcurv/error.hpp"
#include "knotcurv/invariants.hpp"

namespace knotcurv {

namespace {

// Portions of curve segments clipped to an arclength window, for exact
// min/max distance bookkeeping per sub-arc.
struct SubArcRange {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;

    void add_piece(const Vec3& a, const Vec3& b, const Vec3& x0) {
        dmin = std::min(dmin, closest_point_segment(x0, a, b).dist);
        dmax = std::max(dmax, std::max(dist(a, x0), dist(b, x0)));
    }
};

}  // namespace

LabelString shell_labels(const SampledCurve& curve, const Vec3& basepoint, std::size_t M) {
    const ArcTable table = build_arc_table(curve);
    if (static_cast<double>(M) <= table.total)
        fail(ErrorCode::precondition,
             "need M > curve length so each sub-arc is shorter than 1 (length " +
                 std::to_string(table.total) + ", M " + std::to_string(M) + ")");
    const double eps = table.total / static_cast<double>(M);

    const std::size_t edges = table.edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        const double d =
            closest_point_segment(basepoint, curve.vertices[i], curve.vertex(i + 1)).dist;
        if (d < 2.0 - 1e-12)
            fail(ErrorCode::precondition, "curve reaches distance " + std::to_string(d) +
                                              " < 2 from the basepoint at segment " +
                                              std::to_string(i));
    }

    LabelString ls;
    ls.epsilon = eps;
    ls.kappa = total_curvature(curve);
    ls.basepoint = basepoint;
    ls.labels.reserve(M);

    // Walk the edges once, splitting at the M equal-arclength cut points.
    std::size_t edge = 0;
    double edge_start_s = 0.0;
    Vec3 cursor = curve.vertices[0];
    for (std::size_t k = 0; k < M; ++k) {
        const double s_end = (k + 1 == M) ? table.total
                                          : eps * static_cast<double>(k + 1);
        SubArcRange range;
        while (true) {
            const double edge_end_s = edge_start_s + table.edge_len[edge];
            const Vec3 edge_a = curve.vertices[edge];
            const Vec3 edge_b = curve.vertex(edge + 1);
            if (edge_end_s >= s_end || edge + 1 == edges) {
                const double local = s_end - edge_start_s;
                const Vec3 cut = edge_a + table.tangents[edge] * local;
                range.add_piece(cursor, cut, basepoint);
                cursor = cut;
                break;
            }
            range.add_piece(cursor, edge_b, basepoint);
            cursor = edge_b;
            edge_start_s = edge_end_s;
            ++edge;
        }

        // Label rule: the integer sphere crossed if there is one (at most
        // one, since the sub-arc is shorter than 1), otherwise the shell
        // containing the whole sub-arc.
        const double crossing = std::floor(range.dmax);
        int label;
        if (crossing > range.dmin && crossing < range.dmax)
            label = static_cast<int>(crossing);
        else
            label = static_cast<int>(std::floor(std::max(range.dmin, 2.0)));
        if (label < 2 || range.dmax > label + 1 + 1e-9 || range.dmin < label - 1 - 1e-9)
            fail(ErrorCode::precondition,
                 "sub-arc " + std::to_string(k) + " spans more than one sphere (dmin " +
                     std::to_string(range.dmin) + ", dmax " + std::to_string(range.dmax) + ")");
        ls.labels.push_back(label);
    }
    return ls;
}

double beta_bound(double kappa, double epsilon, double n) {
    return 8.0 * kappa * std::pow(n, 1.5) / epsilon + 6.0 * n / epsilon;
}

ShellProfile shell_profile(const LabelString& ls) {
    if (ls.labels.empty())
        fail(ErrorCode::invalid_argument, "empty label string");
    const int max_label = *std::max_element(ls.labels.begin(), ls.labels.end());
    ShellProfile prof;
    prof.phi.assign(max_label - 1, 0.0);
    for (int label : ls.labels)
        prof.phi[label - 2] += 1.0;
    double cum = 0.0;
    for (int n = 2; n <= max_label; ++n) {
        cum += prof.phi[n - 2];
        prof.levels.push_back(n);
        prof.Phi.push_back(cum);
        prof.beta.push_back(beta_bound(ls.kappa, ls.epsilon, n));
        if (cum >= prof.beta.back())
            prof.violations.push_back(n);
    }
    return prof;
}

long long count_jumps(const LabelString& ls, int n) {
    if (n < 2)
        fail(ErrorCode::invalid_argument, "jump level must be >= 2");
    const auto& a = ls.labels;
    long long count = 0;
    std::size_t pos = 0;
    while (true) {
        // earliest start, peak, and return
        std::size_t i = pos;
        while (i < a.size() && a[i] != n)
            ++i;
        if (i >= a.size())
            break;
        std::size_t k = i + 1;
        while (k < a.size() && a[k] < n + 2)
            ++k;
        if (k >= a.size())
            break;
        std::size_t j = k + 1;
        while (j < a.size() && a[j] != n)
            ++j;
        if (j >= a.size())
            break;
        ++count;
        pos = j;  // jumps may share this endpoint term
    }
    return count;
}

long long count_low_substrings(const LabelString& ls, int n, bool shifted) {
    const int limit = shifted ? n + 1 : n;
    const double raw_len = 3.0 * (shifted ? n + 2 : n + 1) / ls.epsilon;
    const auto window = static_cast<long long>(std::ceil(raw_len));
    if (window <= 0)
        fail(ErrorCode::invalid_argument, "degenerate substring window");
    long long count = 0, run = 0;
    for (int label : ls.labels) {
        if (label <= limit) {
            if (++run == window) {
                ++count;
                run = 0;
            }
        } else {
            run = 0;
        }
    }
    return count;
}

double ExtremalString::energy() const {
    double e = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double nm1 = static_cast<double>(i) + 1.0;  // label i+2 -> (n-1) = i+1
        e += phi[i] * epsilon / (nm1 * nm1);
    }
    return e;
}

double ExtremalString::cumulative(int n) const {
    double cum = 0.0;
    for (int label = 2; label <= n && label <= max_label; ++label)
        cum += phi[label - 2];
    return cum;
}

ExtremalString construct_extremal_string(const LabelString& ls, bool check_steps) {
    const ShellProfile prof = shell_profile(ls);
    if (!prof.violations.empty())
        fail(ErrorCode::precondition, "Phi(n) >= beta(n) at n = " +
                                          std::to_string(prof.violations.front()) +
                                          "; extremal construction undefined");

    const std::size_t M = ls.labels.size();
    ExtremalString ex;
    ex.epsilon = ls.epsilon;
    ex.kappa = ls.kappa;
    ex.max_label = static_cast<int>(M) + 1;
    ex.phi.assign(M, 0.0);  // labels 2 .. M+1
    for (int label : ls.labels)
        ex.phi[label - 2] += 1.0;

    auto energy_weight = [&](int label) {
        const double nm1 = static_cast<double>(label) - 1.0;
        return ls.epsilon / (nm1 * nm1);
    };

    // Append top-label mass to bring the total up to beta(M+1), then pull
    // mass down level by level until every cumulative count saturates its
    // bound. Both kinds of step (adding a term, lowering a term) raise the
    // energy.
    const double target_total = beta_bound(ls.kappa, ls.epsilon, static_cast<double>(M + 1));
    double total = static_cast<double>(M);
    if (target_total < total)
        fail(ErrorCode::precondition, "beta(M+1) below the string length; epsilon too large");
    ex.phi[M - 1] += target_total - total;

    double energy = ex.energy();
    for (std::size_t m = 2; m <= M + 1; ++m) {
        const double target = beta_bound(ls.kappa, ls.epsilon, static_cast<double>(m));
        double cum = 0.0;
        for (std::size_t label = 2; label <= m; ++label)
            cum += ex.phi[label - 2];
        double deficit = target - cum;
        if (deficit <= 0.0)
            continue;
        for (std::size_t src = m + 1; src <= M + 1 && deficit > 0.0; ++src) {
            const double take = std::min(ex.phi[src - 2], deficit);
            if (take <= 0.0)
                continue;
            ex.phi[src - 2] -= take;
            ex.phi[m - 2] += take;
            deficit -= take;
            if (check_steps) {
                const double gain =
                    take * (energy_weight(static_cast<int>(m)) - energy_weight(static_cast<int>(src)));
                if (gain < -1e-12 * (1.0 + energy))
                    fail(ErrorCode::precondition, "extremal step lowered energy");
                energy += gain;
            }
        }
        if (deficit > 1e-6 * target)
            fail(ErrorCode::precondition, "could not saturate beta at level " + std::to_string(m));
    }
    return ex;
}

double string_energy(const LabelString& ls) {
    double e = 0.0;
    for (int label : ls.labels) {
        const double nm1 = static_cast<double>(label) - 1.0;
        e += ls.epsilon / (nm1 * nm1);
    }
    return e;
}

std::vector<double> shell_arclengths(const SampledCurve& curve, const Vec3& basepoint) {
    const ArcTable table = build_arc_table(curve);
    std::vector<double> shells;
    auto deposit = [&](std::size_t n, double len) {
        if (shells.size() <= n)
            shells.resize(n + 1, 0.0);
        shells[n] += len;
    };

    const std::size_t edges = table.edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec3 a = curve.vertices[i];
        const Vec3 u = table.tangents[i];
        const double len = table.edge_len[i];
        const Vec3 w = a - basepoint;
        const double beta = dot(w, u);
        const double gamma = norm2(w);

        // distance^2 along the segment is s^2 + 2 beta s + gamma; cut at
        // every integer-radius crossing.
        const double d0 = dist(a, basepoint);
        const double d1 = dist(curve.vertex(i + 1), basepoint);
        const double dlo = closest_point_segment(basepoint, a, curve.vertex(i + 1)).dist;
        const double dhi = std::max(d0, d1);
        std::vector<double> cuts{0.0};
        for (int k = static_cast<int>(std::floor(dlo)) + 1; k <= static_cast<int>(std::floor(dhi));
             ++k) {
            const double disc = beta * beta - gamma + static_cast<double>(k) * k;
            if (disc < 0.0)
                continue;
            const double root = std::sqrt(disc);
            for (double s : {-beta - root, -beta + root})
                if (s > 1e-12 && s < len - 1e-12)
                    cuts.push_back(s);
        }
        cuts.push_back(len);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
            const double dm = std::sqrt(std::max(0.0, mid * mid + 2.0 * beta * mid + gamma));
            deposit(static_cast<std::size_t>(std::floor(dm)), cuts[c + 1] - cuts[c]);
        }
    }
    return shells;
}

ShellExponent estimate_shell_exponent(const SampledCurve& curve, std::size_t basepoints,
                                      std::uint64_t seed) {
    curve.validate();
    if (basepoints < 1)
        fail(ErrorCode::invalid_argument, "need at least one basepoint");

    std::mt19937_64 rng(seed);
    ShellExponent out;
    double slope_sum = 0.0, residual_sum = 0.0;
    std::size_t fitted = 0;

    for (std::size_t b = 0; b < basepoints; ++b) {
        const std::size_t vi = static_cast<std::size_t>(rng() % curve.size());
        const std::vector<double> shells = shell_arclengths(curve, curve.vertices[vi]);

        // Populated shells, skipping n = 0 and the outermost two (edge
        // truncation spoils the density reading there).
        std::vector<double> xs, ys;
        const std::size_t top = shells.size() > 2 ? shells.size() - 2 : 0;
        for (std::size_t n = 1; n < top; ++n) {
            if (shells[n] > 0.0) {
                xs.push_back(std::log(static_cast<double>(n)));
                ys.push_back(std::log(shells[n]));
            }
        }
        if (xs.size() < 3)
            continue;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double m = static_cast<double>(xs.size());
        const double denom = m * sxx - sx * sx;
        if (std::abs(denom) < 1e-12)
            continue;
        const double slope = (m * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / m;
        double res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - (slope * xs[i] + intercept);
            res += e * e;
        }
        res /= m;

        out.per_point.push_back({vi, slope, res, xs.size()});
        slope_sum += slope;
        residual_sum += res;
        ++fitted;
    }

    if (fitted == 0)
        fail(ErrorCode::precondition, "too few populated shells for a fit (< 3)");
    out.beta_hat = slope_sum / static_cast<double>(fitted);
    out.mean_residual = residual_sum / static_cast<double>(fitted);
    out.in_conjectured_range = out.beta_hat >= 0.0 && out.beta_hat <= 2.0;
    return out;
}

}  // namespace knotcurv
