#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "knotcurv/bounds.hpp"
#include "knotcurv/error.hpp"
#include "knotcurv/generators.hpp"
#include "knotcurv/serialize.hpp"

using namespace knotcurv;

namespace {
constexpr double kPi = std::numbers::pi;

// two segments from a point of the radius-b sphere, both tangent to the
// radius-a sphere, coplanar with the center: the oscillation equality case
SampledCurve tangent_two_edge(double a, double b) {
    const double alpha = std::acos(a / b);
    const Vec3 p{a * std::cos(alpha), a * std::sin(alpha), 0.0};
    const Vec3 q{a * std::cos(alpha), -a * std::sin(alpha), 0.0};
    SampledCurve c;
    c.vertices = {p, {b, 0, 0}, q};
    return c;
}

SampledCurve random_out_and_back(std::mt19937_64& rng, double a, double b) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto unit = [&]() {
        const double z = 1.0 - 2.0 * u(rng);
        const double phi = 2.0 * kPi * u(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return Vec3{r * std::cos(phi), r * std::sin(phi), z};
    };
    const Vec3 d0 = unit();
    Vec3 d1 = unit();
    if (std::abs(dot(d0, d1)) > 0.95)
        d1 = any_orthogonal(d0);
    SampledCurve c;
    const std::size_t m = 65;
    const double peak = b + 0.5;
    for (std::size_t k = 0; k < m; ++k) {
        const double t = static_cast<double>(k) / (m - 1);
        const double r = a + (peak - a) * std::sin(kPi * t);
        const Vec3 dir = normalized(d0 * (1.0 - t) + d1 * t);
        c.vertices.push_back(dir * r);
    }
    // exact sphere landings at the ends
    c.vertices.front() = d0 * a;
    c.vertices.back() = d1 * a;
    return c;
}
}  // namespace

TEST_CASE("certificate bookkeeping") {
    const BoundCertificate cert = make_certificate("demo", 1.0, 2.0, 0.0, "digest");
    CHECK(cert.pass);
    CHECK(cert.margin == doctest::Approx(1.0));
    const BoundCertificate fail_cert = make_certificate("demo", 3.0, 2.0, 0.5, "digest");
    CHECK_FALSE(fail_cert.pass);
    // the invariant: pass exactly when lhs <= rhs + tolerance
    for (const BoundCertificate& c : {cert, fail_cert})
        CHECK(c.pass == (c.lhs <= c.rhs + c.tolerance_used));
}

TEST_CASE("packing lemma") {
    SUBCASE("circle attains the closed-curve equality") {
        const auto certs = check_packing(gen_circle(2.0, 4096));
        REQUIRE(!certs.empty());
        const BoundCertificate& main = certs.front();
        CHECK(main.name == "packing_closed");
        CHECK(main.pass);
        CHECK(std::abs(main.margin) / main.rhs < 1e-6);
    }

    SUBCASE("straight diameter attains the open equality") {
        const SampledCurve seg = gen_line_segment({-1, 0, 0}, {1, 0, 0}, 65);
        const auto certs = check_packing(seg, 1.0);
        REQUIRE(!certs.empty());
        CHECK(certs.front().name == "packing_open");
        CHECK(certs.front().pass);
        CHECK(std::abs(certs.front().margin) < 1e-9);
    }

    SUBCASE("corollary appears when the curve is long enough") {
        const auto certs = check_packing(gen_circle(1.0, 512));
        REQUIRE(certs.size() == 2);
        CHECK(certs[1].name == "packing_corollary");
        CHECK(certs[1].pass);  // kappa = 2 pi >= 1
    }

    SUBCASE("random ensemble all pass with positive margin") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto certs = check_packing(gen_fourier_random(5, seed, 256));
            for (const BoundCertificate& c : certs) {
                CHECK(c.pass);
                CHECK(c.margin > 0.0);
            }
        }
    }

    SUBCASE("rejects a ball that cannot contain the curve") {
        CHECK_THROWS_AS(check_packing(gen_circle(2.0, 256), 1.0), Error);
    }
}

TEST_CASE("oscillation lemma") {
    SUBCASE("tangent two-edge polygon attains equality") {
        for (const auto& [a, b] : std::vector<std::pair<double, double>>{
                 {2, 3}, {2, 4}, {3, 5}}) {
            const auto certs = check_oscillation(tangent_two_edge(a, b), a, b, {0, 0, 0});
            REQUIRE(certs.size() == 3);  // arcsin + sqrt + simplified (a >= 2, b >= a+1)
            const BoundCertificate& eq = certs.front();
            CHECK(eq.name == "oscillation_arcsin");
            CHECK(eq.pass);
            CHECK(std::abs(eq.margin) < 1e-4);
            CHECK(eq.lhs == doctest::Approx(kPi - 2.0 * std::asin(a / b)).epsilon(1e-12));
            for (const BoundCertificate& c : certs)
                CHECK(c.pass);
        }
    }

    SUBCASE("radial out-and-back passes comfortably") {
        SampledCurve arc;
        // nudge the return leg so the turn is near pi but edges stay distinct
        const double phi = 0.004;
        arc.vertices = {{2, 0, 0}, {3.5, 0, 0.004}, {2.0 * std::cos(phi), 2.0 * std::sin(phi), 0.0}};
        const auto certs = check_oscillation(arc, 2.0, 3.5, {0, 0, 0});
        CHECK(certs.front().pass);
        CHECK(certs.front().rhs > kPi - 0.1);
    }

    SUBCASE("random out-and-back arcs pass every applicable form") {
        std::mt19937_64 rng(555);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double a = 2.0 + 2.0 * u(rng);
            const double b = a + 1.0 + 2.0 * u(rng);
            const auto certs =
                check_oscillation(random_out_and_back(rng, a, b), a, b, {0, 0, 0});
            REQUIRE(certs.size() == 3);
            for (const BoundCertificate& c : certs)
                CHECK(c.pass);
        }
    }

    SUBCASE("precondition failures carry measured distances") {
        SampledCurve arc;
        arc.vertices = {{2.5, 0, 0}, {4, 0, 0.01}, {2, 0.01, 0}};
        try {
            check_oscillation(arc, 2.0, 3.5, {0, 0, 0});
            FAIL("endpoint off the inner sphere should be rejected");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("2.5") != std::string::npos);
        }
    }
}

TEST_CASE("illumination lemma") {
    SUBCASE("radial ray passes with a wide margin") {
        const SampledCurve ray = gen_line_segment({2, 0, 0}, {1e4, 0, 0}, 20001);
        const BoundCertificate cert = check_illumination(ray, {0, 0, 0});
        CHECK(cert.pass);
        CHECK(cert.lhs == doctest::Approx(0.5).epsilon(0.01));
        CHECK(cert.rhs >= 16.0);
    }

    SUBCASE("spiral stays under the constants") {
        const SampledCurve spiral = gen_spiral(200.0, 8192);
        const BoundCertificate cert = check_illumination(spiral, {0, 0, 0});
        CHECK(cert.pass);
        // the sharp case: lhs is about kappa/3, rhs about 43 kappa
        CHECK(cert.lhs < cert.rhs / 10.0);
    }

    SUBCASE("random ensemble") {
        std::mt19937_64 rng(31337);
        for (int trial = 0; trial < 40; ++trial) {
            SampledCurve c = gen_fourier_random(5, rng(), 256);
            for (Vec3& v : c.vertices)
                v = v * 2.0 + Vec3{0, 0, 4.5};
            const BoundCertificate cert = check_illumination(c, {0, 0, 0});
            CHECK(cert.pass);
            CHECK(cert.margin > 0.0);
        }
    }

    SUBCASE("distance precondition names the closest approach") {
        const SampledCurve near_curve = gen_circle(1.0, 128);
        CHECK_THROWS_AS(check_illumination(near_curve, {0, 0, 0}), Error);
    }
}

TEST_CASE("main theorem") {
    const SampledCurve trefoil = gen_torus_knot(2, 3, 3.0, 1.0, 1024);
    const auto certs = check_main_theorem(trefoil);
    REQUIRE(certs.size() == 2);
    CHECK(certs[0].name == "main_theorem_c4");
    CHECK(certs[1].name == "main_theorem_assembled");
    for (const BoundCertificate& c : certs) {
        CHECK(c.pass);
        CHECK(c.margin > 0.0);
    }
    // assembled constant is the sharper one, about 3.78
    CHECK(certs[1].rhs < certs[0].rhs);
    CHECK(certs[1].rhs / certs[0].rhs == doctest::Approx(3.7784 / 4.0).epsilon(1e-3));

    SUBCASE("open curves are rejected") {
        CHECK_THROWS_AS(check_main_theorem(gen_spiral(30.0, 256)), Error);
    }
}

TEST_CASE("shell suite certificates") {
    SUBCASE("spiral about the origin") {
        const SampledCurve spiral = gen_spiral(60.0, 2048);
        const auto certs = check_shell_suite(spiral, {0, 0, 0});
        REQUIRE(certs.size() == 8);
        for (const BoundCertificate& c : certs) {
            INFO(c.name);
            CHECK(c.pass);
        }
    }

    SUBCASE("trefoil with an external basepoint") {
        const SampledCurve trefoil = gen_torus_knot(2, 3, 3.0, 1.0, 512);
        const Ball ball = min_enclosing_ball(trefoil);
        const Vec3 basepoint = ball.center + Vec3{0, 0, ball.radius + 2.5};
        const auto certs = check_shell_suite(trefoil, basepoint);
        for (const BoundCertificate& c : certs) {
            INFO(c.name);
            CHECK(c.pass);
        }
    }

    SUBCASE("certificates serialize with the frozen fields") {
        const SampledCurve spiral = gen_spiral(30.0, 512);
        const auto certs = check_shell_suite(spiral, {0, 0, 0});
        const nlohmann::json j = certificate_to_json(certs.front());
        for (const char* key :
             {"name", "lhs", "rhs", "margin", "pass", "tolerance_used", "inputs_digest"})
            CHECK(j.contains(key));
    }
}
