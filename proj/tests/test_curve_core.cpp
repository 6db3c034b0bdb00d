#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "knotcurv/curve.hpp"
#include "knotcurv/error.hpp"
#include "knotcurv/generators.hpp"

using namespace knotcurv;

namespace {

constexpr double kPi = std::numbers::pi;

SampledCurve square() {
    SampledCurve c;
    c.closed = true;
    c.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    return c;
}

SampledCurve open_elbow() {
    SampledCurve c;
    c.closed = false;
    c.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    return c;
}

}  // namespace

TEST_CASE("arc table basics") {
    const ArcTable sq = build_arc_table(square());
    CHECK(sq.total == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sq.edge_count() == 4);

    const SampledCurve circle = gen_circle(1.0, 512);
    const ArcTable ct = build_arc_table(circle);
    // inscribed 512-gon perimeter
    CHECK(ct.total == doctest::Approx(2.0 * 512 * std::sin(kPi / 512)).epsilon(1e-12));
    CHECK(std::abs(ct.total - 2.0 * kPi) < 1e-4);

    const ArcTable el = build_arc_table(open_elbow());
    CHECK(el.total == doctest::Approx(2.0));
    CHECK(norm(el.tangents[0] - Vec3{1, 0, 0}) < 1e-15);
    CHECK(norm(el.tangents[1] - Vec3{0, 1, 0}) < 1e-15);

    for (const Vec3& t : ct.tangents)
        CHECK(std::abs(norm(t) - 1.0) < 1e-12);
    // cumulative arclength strictly increasing
    for (std::size_t i = 1; i < ct.cumulative.size(); ++i)
        CHECK(ct.cumulative[i] > ct.cumulative[i - 1]);
}

TEST_CASE("arc table rejects bad curves") {
    SampledCurve two;
    two.vertices = {{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(build_arc_table(two), Error);

    SampledCurve dup;
    dup.vertices = {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(build_arc_table(dup), Error);

    SampledCurve nan_curve = square();
    nan_curve.vertices[2].z = std::nan("");
    CHECK_THROWS_AS(build_arc_table(nan_curve), Error);

    SampledCurve closed_dup;
    closed_dup.closed = true;
    closed_dup.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(build_arc_table(closed_dup), Error);
}

TEST_CASE("arc distance") {
    const SampledCurve circle = gen_circle(1.0, 512);
    const ArcTable table = build_arc_table(circle);
    CHECK(std::abs(arc_distance(table, 0, 256) - kPi) < 1e-4);
    CHECK(arc_distance(table, 17, 17) == 0.0);
    CHECK(arc_distance(table, 3, 509) == doctest::Approx(arc_distance(table, 509, 3)));

    const ArcTable el = build_arc_table(open_elbow());
    CHECK(el.closed == false);
    CHECK(arc_distance(el, 0, 2) == doctest::Approx(2.0));
    CHECK_THROWS_AS(arc_distance(el, 0, 3), Error);
}

TEST_CASE("arc distance dominates chord distance") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const SampledCurve c = gen_fourier_random(4, rng(), 128);
        const ArcTable table = build_arc_table(c);
        for (std::size_t i = 0; i < c.size(); i += 7)
            for (std::size_t j = i + 1; j < c.size(); j += 11)
                CHECK(arc_distance(table, i, j) >=
                      dist(c.vertices[i], c.vertices[j]) - 1e-12);
    }
}

TEST_CASE("resample") {
    const SampledCurve circle512 = gen_circle(1.0, 512);
    const SampledCurve circle128 = resample(circle512, 128);
    const double l512 = build_arc_table(circle512).total;
    const double l128 = build_arc_table(circle128).total;
    CHECK(l128 <= l512 + 1e-12);            // inscribed
    CHECK(std::abs(l128 - l512) / l512 < 1e-3);

    SUBCASE("idempotent on equally spaced input") {
        const SampledCurve again = resample(circle512, 512);
        for (std::size_t i = 0; i < 512; ++i)
            CHECK(norm(again.vertices[i] - circle512.vertices[i]) < 1e-9);
    }

    SUBCASE("open segment spacing and endpoints") {
        const SampledCurve seg = gen_line_segment({0, 0, 0}, {10, 0, 0}, 5);
        const SampledCurve fine = resample(seg, 11);
        CHECK(fine.size() == 11);
        for (std::size_t i = 0; i < 11; ++i)
            CHECK(norm(fine.vertices[i] - Vec3{static_cast<double>(i), 0, 0}) < 1e-12);
        CHECK(norm(fine.vertices.front() - seg.vertices.front()) == 0.0);
        CHECK(norm(fine.vertices.back() - seg.vertices.back()) == 0.0);
    }

    SUBCASE("rejects tiny n") { CHECK_THROWS_AS(resample(circle512, 2), Error); }

    SUBCASE("length never grows under resampling") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 10; ++trial) {
            const SampledCurve c = gen_fourier_random(5, rng(), 256);
            const double l0 = build_arc_table(c).total;
            for (std::size_t n : {64u, 100u, 333u}) {
                const SampledCurve r = resample(c, n);
                CHECK(build_arc_table(r).total <= l0 + 1e-12);
            }
        }
    }
}

TEST_CASE("min enclosing ball") {
    SUBCASE("unit circle samples") {
        const Ball b = min_enclosing_ball(gen_circle(1.0, 512));
        CHECK(norm(b.center) < 1e-6);
        CHECK(b.radius == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("two antipodal clusters") {
        SampledCurve c;
        c.vertices = {{5, 0, 0},      {5.0, 0.01, 0},  {-5, 0, 0},
                      {-5.0, 0.01, 0}, {4.99, 0, 0.01}, {-4.99, 0, 0.01}};
        const Ball b = min_enclosing_ball(c);
        CHECK(b.radius == doctest::Approx(5.0).epsilon(1e-4));
    }

    SUBCASE("random clouds: containment plus support points") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Vec3> pts(100);
            for (Vec3& p : pts)
                p = {u(rng), u(rng) * 2.0, u(rng) * 0.5};
            const Ball b = min_enclosing_ball_points(pts);
            int on_boundary = 0;
            for (const Vec3& p : pts) {
                const double d = dist(p, b.center);
                CHECK(d <= b.radius * (1.0 + 1e-9));
                if (d >= b.radius * (1.0 - 1e-7))
                    ++on_boundary;
            }
            CHECK(on_boundary >= 2);
        }
    }

    SUBCASE("degenerate inputs") {
        std::vector<Vec3> collinear;
        for (int i = 0; i <= 10; ++i)
            collinear.push_back({static_cast<double>(i), 0, 0});
        const Ball b = min_enclosing_ball_points(collinear);
        CHECK(b.radius == doctest::Approx(5.0).epsilon(1e-9));
        CHECK(norm(b.center - Vec3{5, 0, 0}) < 1e-9);

        std::vector<Vec3> planar;
        for (int i = 0; i < 7; ++i)
            planar.push_back({std::cos(2 * kPi * i / 7), std::sin(2 * kPi * i / 7), 3.0});
        const Ball pb = min_enclosing_ball_points(planar);
        CHECK(pb.radius == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("large input stays exact") {
        const SampledCurve seg = gen_line_segment({-3, 0, 0}, {3, 0, 0}, 100001);
        const Ball b = min_enclosing_ball(seg);
        CHECK(b.radius == doctest::Approx(3.0).epsilon(1e-9));
    }
}

TEST_CASE("determinism of arc tables") {
    const SampledCurve a = gen_fourier_random(5, 12345, 256);
    const SampledCurve b = gen_fourier_random(5, 12345, 256);
    const ArcTable ta = build_arc_table(a);
    const ArcTable tb = build_arc_table(b);
    REQUIRE(ta.cumulative.size() == tb.cumulative.size());
    for (std::size_t i = 0; i < ta.cumulative.size(); ++i)
        CHECK(ta.cumulative[i] == tb.cumulative[i]);
    CHECK(ta.total == tb.total);
}
