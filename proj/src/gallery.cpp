#include "framecast/gallery.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace framecast {

namespace {

constexpr double kPi = std::numbers::pi;

CurveSpec dsl(const char* text, const char* name) {
    CurveDefinition d = parse_curve(text);
    return CurveSpec::analytic(d.coords, d.t_min, d.t_max, name);
}

CurveSpec spivak() {
    const Expr t = Expr::param();
    return CurveSpec::analytic({t, Expr::call(Func::flat, t), Expr::call(Func::flat, -t)}, -1.0, 1.0,
                               "spivak");
}

double sgn(double x) { return x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0; }

std::vector<GalleryEntry> build() {
    std::vector<GalleryEntry> g;
    auto add = [&](std::string name, std::string desc, auto payload, Expectation e, std::size_t samples = 0) {
        g.push_back(GalleryEntry{std::move(name), std::move(desc), std::move(payload), std::move(e), samples});
    };

    {
        Expectation e;
        e.basis = Basis::direct;
        e.verdict = Verdict::liftable;
        e.planar = true;
        e.kappa = 1.0;
        e.kappa_signed = 1.0;
        e.tau = 0.0;
        e.length = 2 * kPi;
        e.zeros = 0;
        add("circle", "unit circle, counterclockwise", dsl("(cos(t), sin(t), 0) t in (0, 2*pi)", "circle"), e);
    }
    {
        Expectation e;
        e.basis = Basis::direct;
        e.verdict = Verdict::liftable;
        e.planar = true;
        e.kappa = 1.0;
        e.kappa_signed = -1.0;
        e.tau = 0.0;
        e.zeros = 0;
        add("circle_cw", "unit circle, clockwise", dsl("(cos(t), -sin(t), 0) t in (0, 2*pi)", "circle_cw"), e);
    }
    {
        Expectation e;
        e.basis = Basis::independent_oracle;
        e.verdict = Verdict::liftable;
        e.planar = true;
        e.kappa = 0.5;
        e.kappa_signed = 0.5;
        e.tau = 0.0;
        e.length = 2 * kPi;
        e.zeros = 0;
        add("circle2", "half circle of radius 2", dsl("(2*cos(t), 2*sin(t), 0) t in (0, pi)", "circle2"), e);
    }
    {
        Expectation e;
        e.basis = Basis::direct;
        e.no_base_point = true;
        e.length = 1.0;
        add("line", "straight segment of unit length",
            dsl("(t/3, 2*t/3, 2*t/3) t in (0, 1)", "line"), e);
    }
    {
        Expectation e;
        e.basis = Basis::independent_oracle;
        e.verdict = Verdict::liftable;
        e.planar = false;
        e.kappa = 0.5;
        e.tau = 0.5;
        e.length = 2 * kPi * std::numbers::sqrt2;
        e.zeros = 0;
        add("helix11", "helix (cos t, sin t, t), one turn",
            dsl("(cos(t), sin(t), t) t in (0, 2*pi)", "helix11"), e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.planar = true;
        e.tau = 0.0;
        e.zeros = 1;
        e.theta_plus = 0.0;
        e.theta_minus = 0.0;
        e.mismatch = 0.0;
        e.c1 = true;
        add("inflection", "graph of t^3 with an inflection at the origin",
            dsl("(t, t^3, 0) t in (-1, 1)", "inflection"), e, 6001);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::not_liftable;
        e.reason = "mismatch";
        e.planar = false;
        e.theta_plus = kPi / 2;
        e.theta_minus = 0.0;
        e.mismatch = kPi / 2;
        add("spivak", "flat pieces exp(-1/t^2) in two perpendicular planes", spivak(), e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.planar = false;
        e.zeros = 0;
        e.line_distance = 1.0;
        add("sphere", "Viviani curve on the unit sphere",
            dsl("((1+cos(t))/2, sin(t)/2, sin(t/2)) t in (0, 2*pi)", "sphere"), e);
    }

    auto dev = [&](std::string name, std::string desc, auto r, auto th, Expectation e) {
        add(std::move(name), std::move(desc), synthetic_development(r, th), std::move(e));
    };
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::not_liftable;
        e.reason = "mismatch";
        e.theta_plus = 5 * kPi / 8;
        e.theta_minus = kPi / 8;
        e.mismatch = kPi / 2;
        dev("fig3a", "enters along pi/8, leaves along 5pi/8", [](double s) { return s; },
            [](double s) { return s < 0 ? kPi / 8 : 5 * kPi / 8; }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::not_liftable;
        e.reason = "theta_plus absent";
        dev("fig3b", "(s, pi/4 + (pi/8) sin(1/s))", [](double s) { return s; },
            [](double s) { return kPi / 4 + kPi / 8 * std::sin(1 / s); }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::not_liftable;
        dev("fig3c", "(s, 1/sqrt|s|)", [](double s) { return s; },
            [](double s) { return 1 / std::sqrt(std::abs(s)); }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.theta_plus = e.theta_minus = kPi / 4;
        e.mismatch = 0.0;
        e.c1 = true;
        dev("fig4a", "(s, s + pi/4)", [](double s) { return s; }, [](double s) { return s + kPi / 4; }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.theta_plus = e.theta_minus = kPi / 4;
        e.mismatch = 0.0;
        dev("fig4b", "(|s|, s + pi/4)", [](double s) { return std::abs(s); },
            [](double s) { return s + kPi / 4; }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.theta_plus = e.theta_minus = kPi / 4;
        e.mismatch = 0.0;
        e.c1 = false;
        dev("fig4c", "(s, |s| + pi/4)", [](double s) { return s; },
            [](double s) { return std::abs(s) + kPi / 4; }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.theta_plus = e.theta_minus = kPi / 4;
        e.mismatch = 0.0;
        e.c1 = false;
        dev("fig5", "(s, pi/4 + s (pi/8) sin(1/s))", [](double s) { return s; },
            [](double s) { return kPi / 4 + s * kPi / 8 * std::sin(1 / s); }, e);
    }
    {
        Expectation e;
        e.basis = Basis::published_example;
        e.verdict = Verdict::liftable;
        e.theta_plus = e.theta_minus = 0.0;
        e.mismatch = 0.0;
        e.c1 = false;
        dev("fig6", "(s, s^(1/3))", [](double s) { return s; }, [](double s) { return std::cbrt(s); }, e);
    }
    {
        Expectation e;
        e.basis = Basis::direct;
        e.verdict = Verdict::unsupported;
        e.reason = "non-isolated zero";
        dev("plateau", "development resting at the origin for |s| <= 0.2",
            [](double s) { return std::abs(s) <= 0.2 ? 0.0 : s - 0.2 * sgn(s); },
            [](double) { return kPi / 4; }, e);
    }
    return g;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string_view to_string(Basis b) {
    switch (b) {
        case Basis::published_example: return "published_example";
        case Basis::independent_oracle: return "independent_oracle";
        case Basis::direct: return "direct";
    }
    return "?";
}

NormalDevelopment synthetic_development(const std::function<double(double)>& r,
                                        const std::function<double(double)>& theta, std::size_t n) {
    NormalDevelopment nd;
    nd.s.resize(n);
    nd.k.resize(n);
    const double half = static_cast<double>(n - 1) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (static_cast<double>(i) - half) / half;
        nd.s[i] = s;
        if (s == 0.0) {
            nd.k[i] = Vec2::Zero();
        } else {
            const double rr = r(s), th = theta(s);
            nd.k[i] = Vec2(rr * std::cos(th), rr * std::sin(th));
        }
    }
    return nd;
}

const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> entries = build();
    return entries;
}

const GalleryEntry& gallery_entry(std::string_view name) {
    for (const auto& e : gallery())
        if (e.name == name) return e;
    throw std::out_of_range("unknown gallery entry '" + std::string(name) + "'");
}

std::string summary(const GalleryEntry& e) {
    const Expectation& x = e.expected;
    std::ostringstream os;
    os << e.name << '\t' << (e.is_curve() ? "curve" : "development") << '\t';
    if (x.no_base_point) os << "no base point";
    if (x.verdict) os << to_string(*x.verdict);
    if (x.reason) os << " (" << *x.reason << ')';
    if (x.kappa) os << " kappa=" << fmt(*x.kappa);
    if (x.tau) os << " tau=" << fmt(*x.tau);
    if (x.theta_plus) os << " theta+=" << fmt(*x.theta_plus);
    if (x.theta_minus) os << " theta-=" << fmt(*x.theta_minus);
    if (x.mismatch && *x.mismatch > 0) os << " mismatch=" << fmt(*x.mismatch);
    if (x.c1) os << " c1=" << (*x.c1 ? "yes" : "no");
    if (x.line_distance) os << " development on a line at distance " << fmt(*x.line_distance);
    os << " [" << to_string(x.basis) << ']';
    return os.str();
}

}  // namespace framecast
