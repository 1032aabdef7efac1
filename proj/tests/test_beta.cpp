#include <doctest.h>

#include <cmath>
#include <numbers>

#include "framecast/beta.hpp"
#include "framecast/errors.hpp"
#include "framecast/gallery.hpp"
#include "framecast/pipeline.hpp"
#include "support.hpp"

using namespace framecast;

namespace {
FrameResult frame(const char* text, std::size_t n = 0) {
    FrameOptions o;
    o.samples = n;
    return frame_curve(parse_curve_spec(text), o);
}
}  // namespace

TEST_CASE("Beta frame is orthonormal and right-handed") {
    for (const char* text : {"(cos(t), sin(t), t) t in (0, 6)", "(t, t^3, 0) t in (-1, 1)",
                             "(cos(t), sin(2*t), t^2/3) t in (0, 5)", "(t, t^3, t^4) t in (-1, 1)"}) {
        const FrameResult r = frame(text);
        INFO(text);
        REQUIRE(r.beta);
        for (const BetaSample& b : r.beta->samples) {
            CHECK(std::abs(b.T.norm() - 1) <= 1e-12);
            CHECK(std::abs(b.N.norm() - 1) <= 1e-12);
            CHECK(std::abs(b.T.dot(b.N)) <= 1e-12);
            CHECK((b.T.cross(b.N) - b.B).norm() <= 1e-12);
        }
    }
}

TEST_CASE("Beta curvature carries a sign through an inflection") {
    const FrameResult r = frame("(t, t^3, 0) t in (-1, 1)", 2001);
    REQUIRE(r.beta);
    const auto& s = r.beta->samples;
    // kappa_signed = 6t / (1 + 9t^4)^(3/2) at the grid parameters, up to one global sign.
    const double sigma = s.front().kappa > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < s.size(); i += 20) {
        const double t = r.curve.t_of_s(r.curve.grid()[i]);
        const double want = -6 * t / std::pow(1 + 9 * t * t * t * t, 1.5);
        CHECK(std::abs(sigma * s[i].kappa - want) <= 1e-8);
    }
    // N is continuous through the inflection, unlike the Frenet normal.
    double worst = 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) worst = std::min(worst, s[i].N.dot(s[i + 1].N));
    CHECK(worst > 0.99);
}

TEST_CASE("torsion of a curve through a flat point") {
    // (t, t^3, t^4): tau = 24 t / (...) stays finite at t = 0 for the Beta frame.
    const FrameResult r = frame("(t, t^3, t^4) t in (-1, 1)", 4001);
    REQUIRE(r.beta);
    for (std::size_t i = 0; i < r.beta->samples.size(); ++i) {
        const auto& f = r.frenet[i];
        const auto& b = r.beta->samples[i];
        REQUIRE(b.tau);
        CHECK(std::isfinite(*b.tau));
        if (f.tau_f && f.kappa_f > 1e-2) CHECK(std::abs(*b.tau - *f.tau_f) <= 1e-4);
    }
}

TEST_CASE("assembly refuses a lift that failed") {
    const NormalDevelopment& nd = gallery_entry("fig3a").development();
    const LiftResult l = lift_development(nd);
    REQUIRE_FALSE(l.lift.liftable());
    const ArcLengthCurve c = reconstruct(nd);
    const BishopField field = transport(c, InitialFrame{});
    try {
        assemble(field, l.lift, l.analyses);
        FAIL("expected NoBetaFrameError");
    } catch (const NoBetaFrameError& e) {
        CHECK(e.verdict() == Verdict::not_liftable);
        REQUIRE(e.failure());
        CHECK(e.failure()->reason == "mismatch");
    }
}

TEST_CASE("torsion derivative is exact for linear angles on uneven grids") {
    PolarLift l;
    for (int i = 0; i < 40; ++i) {
        const double s = 100.0 + i * 0.01 + (i % 3) * 0.002;
        l.s.push_back(s);
        l.r_tilde.push_back(1.0);
        l.theta_tilde.push_back(3.0 - 0.25 * s);
    }
    for (const auto& t : differentiate_lift(l, {})) {
        REQUIRE(t);
        CHECK(std::abs(*t + 0.25) <= 1e-9);
    }
}

TEST_CASE("failed lifts surface through the pipeline") {
    const FrameResult r = frame_curve(gallery_entry("spivak").curve());
    CHECK_FALSE(r.beta);
    CHECK(r.lift.lift.verdict == Verdict::not_liftable);
    CHECK_THROWS_AS(frame_curve(gallery_entry("line").curve()), NoBasePointError);
}
