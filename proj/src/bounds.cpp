#include "knotcurv/bounds.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "knotcurv/error.hpp"

namespace knotcurv {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string curve_digest(const SampledCurve& curve, const std::string& note) {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(curve.vertices.data(), curve.vertices.size() * sizeof(Vec3), h);
    const char closed = curve.closed ? 1 : 0;
    h = fnv1a(&closed, 1, h);
    h = fnv1a(note.data(), note.size(), h);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    std::string out = buf;
    out += ":";
    out += std::to_string(curve.size());
    out += curve.closed ? "v,closed" : "v,open";
    if (!note.empty()) {
        out += ";";
        out += note;
    }
    return out;
}

BoundCertificate make_certificate(const std::string& name, double lhs, double rhs,
                                  double tolerance, const std::string& digest) {
    BoundCertificate cert;
    cert.name = name;
    cert.lhs = lhs;
    cert.rhs = rhs;
    cert.margin = rhs - lhs;
    cert.tolerance_used = tolerance;
    cert.pass = lhs <= rhs + tolerance;
    cert.inputs_digest = digest;
    return cert;
}

std::vector<BoundCertificate> check_packing(const SampledCurve& curve,
                                            std::optional<double> rho) {
    const ArcTable table = build_arc_table(curve);
    const Ball ball = min_enclosing_ball(curve);
    double radius = ball.radius;
    if (rho) {
        if (ball.radius > *rho * (1.0 + 1e-9))
            fail(ErrorCode::precondition, "curve does not fit in a ball of radius " +
                                              std::to_string(*rho) + " (needs " +
                                              std::to_string(ball.radius) + ")");
        radius = *rho;
    }
    const double kappa = total_curvature(curve);
    const double L = table.total;
    const std::string digest =
        curve_digest(curve, "rho=" + std::to_string(radius) + ";kappa=polygonal");

    std::vector<BoundCertificate> certs;
    if (curve.closed)
        certs.push_back(make_certificate("packing_closed", L, radius * kappa,
                                         1e-9 * (1.0 + radius * kappa), digest));
    else
        certs.push_back(make_certificate("packing_open", L, radius * (kappa + 2.0),
                                         1e-9 * (1.0 + radius * (kappa + 2.0)), digest));
    if (L >= 3.0 * radius)
        certs.push_back(make_certificate("packing_corollary", 1.0, kappa, 1e-9, digest));
    return certs;
}

std::vector<BoundCertificate> check_oscillation(const SampledCurve& arc, double a, double b,
                                                const Vec3& center) {
    if (!(a > 0.0) || !(a < b))
        fail(ErrorCode::invalid_argument, "oscillation lemma needs 0 < a < b");
    arc.validate();
    if (arc.closed)
        fail(ErrorCode::precondition, "oscillation lemma applies to an open arc");

    const double tol_sphere = 1e-6 * a;
    const double d_first = dist(arc.vertices.front(), center);
    const double d_last = dist(arc.vertices.back(), center);
    if (std::abs(d_first - a) > tol_sphere || std::abs(d_last - a) > tol_sphere)
        fail(ErrorCode::precondition, "arc endpoints must lie on the radius-" +
                                          std::to_string(a) + " sphere (measured " +
                                          std::to_string(d_first) + ", " +
                                          std::to_string(d_last) + ")");
    double d_max = 0.0;
    for (const Vec3& v : arc.vertices)
        d_max = std::max(d_max, dist(v, center));
    if (d_max < b - 1e-9)
        fail(ErrorCode::precondition, "arc never reaches the radius-" + std::to_string(b) +
                                          " sphere (max distance " + std::to_string(d_max) + ")");

    // Lower bounds on curvature are checked against the inscribed 4x
    // refinement, which cannot overestimate the arc's turning.
    const double kappa = total_curvature(arc);
    const double kappa_refined = total_curvature(resample(arc, 4 * arc.size()));
    const double delta = kappa - kappa_refined;
    const std::string digest = curve_digest(
        arc, "a=" + std::to_string(a) + ";b=" + std::to_string(b) +
                 ";kappa=polygonal_4x_refined;refine_delta=" + std::to_string(delta));
    const double tol = 1e-9 * (1.0 + kappa_refined);

    std::vector<BoundCertificate> certs;
    certs.push_back(make_certificate("oscillation_arcsin", kPi - 2.0 * std::asin(a / b),
                                     kappa_refined, tol, digest));
    if (b >= a + 1.0)
        certs.push_back(make_certificate("oscillation_sqrt",
                                         2.0 * std::sqrt(2.0) / std::sqrt(a + 1.0),
                                         kappa_refined, tol, digest));
    if (b >= a + 1.0 && a >= 2.0)
        certs.push_back(
            make_certificate("oscillation_simple", 2.0 / std::sqrt(a), kappa_refined, tol, digest));
    return certs;
}

BoundCertificate check_illumination(const SampledCurve& curve, const Vec3& basepoint) {
    const ArcTable table = build_arc_table(curve);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_seg = 0;
    for (std::size_t i = 0; i < table.edge_count(); ++i) {
        const double d =
            closest_point_segment(basepoint, curve.vertices[i], curve.vertex(i + 1)).dist;
        if (d < worst) {
            worst = d;
            worst_seg = i;
        }
    }
    if (worst < 2.0 - 1e-12)
        fail(ErrorCode::precondition, "curve reaches distance " + std::to_string(worst) +
                                          " < 2 from the basepoint (segment " +
                                          std::to_string(worst_seg) + ")");

    const ScalarWithError illum = illumination(curve, basepoint);
    const double kappa = total_curvature(curve);
    const std::string digest =
        curve_digest(curve, "kappa=polygonal;illum_err=" + std::to_string(illum.error));
    // Quadrature error goes on the conservative side of the inequality.
    return make_certificate("illumination", illum.value + illum.error, 16.0 + 43.0 * kappa, 0.0,
                            digest);
}

std::vector<BoundCertificate> check_main_theorem(const SampledCurve& curve,
                                                 const InvariantOptions& opts) {
    const InvariantReport report = compute_invariants(curve, opts);
    if (!report.acn || !report.ropelength)
        fail(ErrorCode::precondition, "main theorem needs a closed embedded curve");
    const double acn_hi = *report.acn + report.error_estimates.at("acn");
    const double el = *report.ropelength;
    const double kappa = report.total_curvature;

    // Assembled constant from the Near/Far analysis: Near contributes
    // b1 = 2pi (pi/4)(pi/2)^2 per unit length, Far contributes c1 + c2*kappa,
    // and Fenchel converts the pure-length term via kappa >= 2pi.
    const double b1 = 2.0 * kPi * (kPi / 4.0) * (kPi / 2.0) * (kPi / 2.0);
    const double c_assembled = (43.0 + (b1 + 16.0) / (2.0 * kPi)) / (4.0 * kPi);

    const std::string digest =
        curve_digest(curve, "acn_err=" + std::to_string(report.error_estimates.at("acn")) +
                                ";lhs=acn+err");
    std::vector<BoundCertificate> certs;
    certs.push_back(
        make_certificate("main_theorem_c4", acn_hi, 4.0 * el * kappa, 0.0, digest));
    certs.push_back(make_certificate("main_theorem_assembled", acn_hi, c_assembled * el * kappa,
                                     0.0, digest));
    return certs;
}

std::vector<BoundCertificate> check_shell_suite(const SampledCurve& curve, const Vec3& basepoint,
                                                std::size_t M) {
    const ArcTable table = build_arc_table(curve);
    if (M == 0)
        M = static_cast<std::size_t>(std::ceil(1.25 * table.total)) + 1;
    const LabelString ls = shell_labels(curve, basepoint, M);
    const ShellProfile prof = shell_profile(ls);
    const std::string digest = curve_digest(
        curve, "M=" + std::to_string(M) + ";eps=" + std::to_string(ls.epsilon) +
                   ";kappa=polygonal");

    std::vector<BoundCertificate> certs;

    double max_step = 0.0;
    for (std::size_t i = 1; i < ls.labels.size(); ++i)
        max_step = std::max(max_step,
                            static_cast<double>(std::abs(ls.labels[i] - ls.labels[i - 1])));
    certs.push_back(make_certificate("shell_contiguity", max_step, 1.0, 0.0, digest));

    double phi_ratio = 0.0;
    for (std::size_t i = 0; i < prof.levels.size(); ++i)
        phi_ratio = std::max(phi_ratio, prof.Phi[i] / prof.beta[i]);
    certs.push_back(make_certificate("shell_phi_bound", phi_ratio, 1.0, 0.0, digest));

    double jump_ratio = 0.0;
    for (int n : prof.levels) {
        const double bound = 0.5 * ls.kappa * std::sqrt(static_cast<double>(n + 1));
        const double jumps = static_cast<double>(count_jumps(ls, n));
        if (bound > 0.0)
            jump_ratio = std::max(jump_ratio, jumps / bound);
        else if (jumps > 0.0)
            jump_ratio = std::max(jump_ratio, 2.0);  // jumps on a straight curve: impossible
    }
    certs.push_back(make_certificate("shell_jump_bound", jump_ratio, 1.0, 0.0, digest));

    for (bool shifted : {false, true}) {
        double ratio = 0.0;
        for (int n : prof.levels) {
            const double count = static_cast<double>(count_low_substrings(ls, n, shifted));
            if (ls.kappa > 0.0)
                ratio = std::max(ratio, count / ls.kappa);
            else if (count > 0.0)
                ratio = std::max(ratio, 2.0);
        }
        certs.push_back(make_certificate(
            shifted ? "shell_substring_le_n1" : "shell_substring_le_n", ratio, 1.0, 0.0, digest));
    }

    const ExtremalString ex = construct_extremal_string(ls, true);
    const double e_y = string_energy(ls);
    const double e_star = ex.energy();
    certs.push_back(
        make_certificate("shell_energy_monotone", e_y, e_star, 1e-9 * (1.0 + e_star), digest));
    certs.push_back(
        make_certificate("shell_energy_bound", e_star, 16.0 + 43.0 * ls.kappa, 0.0, digest));

    const ScalarWithError illum = illumination(curve, basepoint);
    certs.push_back(make_certificate("illumination_vs_energy", illum.value, e_y,
                                     illum.error + 1e-9 * (1.0 + e_y), digest));
    return certs;
}

}  // namespace knotcurv
