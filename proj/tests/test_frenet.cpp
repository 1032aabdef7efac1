#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "framecast/errors.hpp"
#include "framecast/frenet.hpp"
#include "support.hpp"

using namespace framecast;
using framecast::test::uniform;

namespace {

// Frenet quantities of t -> (a cos t, a sin t, b t) by differentiating the parametrization
// numerically and applying the parameter-invariant formulas.
struct Oracle {
    double kappa, tau;
};

Oracle helix_oracle(double a, double b, double t) {
    auto x = [&](int k) {
        return Vec3(framecast::test::fd([&](double u) { return a * std::cos(u); }, t, k),
                    framecast::test::fd([&](double u) { return a * std::sin(u); }, t, k),
                    framecast::test::fd([&](double u) { return b * u; }, t, k));
    };
    const Vec3 d1 = x(1), d2 = x(2), d3 = x(3);
    const Vec3 c = d1.cross(d2);
    return {c.norm() / std::pow(d1.norm(), 3), c.dot(d3) / c.squaredNorm()};
}

}  // namespace

TEST_CASE("helix curvature and torsion agree with the finite difference oracle") {
    for (int trial = 0; trial < 12; ++trial) {
        const double a = uniform(0.3, 2), b = uniform(-1.5, 1.5);
        char text[128];
        std::snprintf(text, sizeof text, "(%.17g*cos(t), %.17g*sin(t), %.17g*t) t in (0, 4)", a, a, b);
        const ArcLengthCurve c = ArcLengthCurve::build(parse_curve_spec(text), 401);
        const auto field = frenet_field(c);
        for (std::size_t i = 0; i < field.size(); i += 40) {
            const Oracle o = helix_oracle(a, b, c.t_of_s(c.grid()[i]));
            INFO(text);
            CHECK(std::abs(field[i].kappa_f - o.kappa) <= 1e-6);
            REQUIRE(field[i].tau_f);
            CHECK(std::abs(*field[i].tau_f - o.tau) <= 1e-5);
            CHECK(std::abs(field[i].T.dot(*field[i].N_f)) <= 1e-12);
            CHECK((field[i].T.cross(*field[i].N_f) - *field[i].B_f).norm() <= 1e-12);
        }
    }
}

TEST_CASE("a straight line has no normal") {
    const ArcLengthCurve c = ArcLengthCurve::build(parse_curve_spec("(1 + 2*t, 3*t, -t) t in (0, 1)"), 64);
    for (const FrenetSample& f : frenet_field(c)) {
        CHECK(f.kappa_f <= kTolKappa);
        CHECK_FALSE(f.N_f.has_value());
        CHECK_FALSE(f.B_f.has_value());
        CHECK_FALSE(f.tau_f.has_value());
    }
}

TEST_CASE("point queries interpolate between grid points") {
    const ArcLengthCurve c = ArcLengthCurve::build(parse_curve_spec("(2*cos(t), 2*sin(t), 0) t in (0, 3)"), 64);
    const FrenetSample f = frenet_at(c, 1.2345);
    CHECK(f.s == 1.2345);
    CHECK(f.kappa_f == doctest::Approx(0.5));
    CHECK(*f.tau_f == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(frenet_at(c, -0.5), DomainError);
    CHECK_THROWS_AS(frenet_at(c, 100.0), DomainError);
}

TEST_CASE("planar detection and the signed curvature frame") {
    const ArcLengthCurve circle = ArcLengthCurve::build(parse_curve_spec("(cos(t), sin(t), 0) t in (0, 6)"), 301);
    const auto plane = is_planar(circle);
    REQUIRE(plane);
    CHECK((plane->normal - Vec3::UnitZ()).norm() <= 1e-12);
    CHECK(plane->e1.cross(plane->e2).dot(plane->normal) == doctest::Approx(1.0));
    for (const PlanarSample& p : planar_field(circle, *plane)) CHECK(p.kappa_signed == doctest::Approx(1.0));

    const ArcLengthCurve cw = ArcLengthCurve::build(parse_curve_spec("(cos(t), -sin(t), 0) t in (0, 6)"), 301);
    for (const PlanarSample& p : planar_field(cw, *is_planar(cw))) CHECK(p.kappa_signed == doctest::Approx(-1.0));

    const ArcLengthCurve helix = ArcLengthCurve::build(parse_curve_spec("(cos(t), sin(t), t) t in (0, 6)"), 301);
    CHECK_FALSE(is_planar(helix));
    CHECK_THROWS_AS(planar_frame_at(helix, 1.0), NotPlanarError);
}

TEST_CASE("planar curves in a tilted plane") {
    for (int trial = 0; trial < 10; ++trial) {
        const Vec3 u = framecast::test::random_unit();
        Vec3 v = framecast::test::random_unit();
        v = (v - v.dot(u) * u).normalized();
        char text[256];
        // Ellipse in span(u, v).
        std::snprintf(text, sizeof text,
                      "(%.17g*cos(t) + %.17g*2*sin(t), %.17g*cos(t) + %.17g*2*sin(t), %.17g*cos(t) + %.17g*2*sin(t)) "
                      "t in (0, 6)",
                      u.x(), v.x(), u.y(), v.y(), u.z(), v.z());
        const ArcLengthCurve c = ArcLengthCurve::build(parse_curve_spec(text), 501);
        const auto plane = is_planar(c);
        REQUIRE(plane);
        CHECK(std::abs(std::abs(plane->normal.dot(u.cross(v))) - 1) <= 1e-10);
        const auto field = frenet_field(c);
        const auto planar = planar_field(c, *plane);
        for (std::size_t i = 0; i < field.size(); i += 25) {
            CHECK(std::abs(std::abs(planar[i].kappa_signed) - field[i].kappa_f) <= 1e-10);
            CHECK(std::abs(std::abs(embed(*plane, planar[i].N_good).dot(*field[i].N_f)) - 1) <= 1e-10);
        }
    }
}

TEST_CASE("Frenet equations hold to second order on the grid") {
    const ArcLengthCurve a = ArcLengthCurve::build(parse_curve_spec("(cos(t), sin(t), t) t in (0, 6)"), 1001);
    const ArcLengthCurve b = ArcLengthCurve::build(parse_curve_spec("(cos(t), sin(t), t) t in (0, 6)"), 2001);
    const FrenetResiduals ra = frenet_residuals(frenet_field(a)), rb = frenet_residuals(frenet_field(b));
    CHECK(ra.samples == 999);
    CHECK(ra.tangent / rb.tangent == doctest::Approx(4.0).epsilon(0.05));
    CHECK(ra.binormal / rb.binormal == doctest::Approx(4.0).epsilon(0.05));
}
