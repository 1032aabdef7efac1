#include "framecast/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "framecast/errors.hpp"

namespace framecast {

namespace {

struct Analytic {
    std::array<Expr, 3> coords;
};

// Natural cubic spline; m holds second derivatives at the knots.
struct Spline {
    std::vector<double> t;
    std::vector<Vec3> y;
    std::vector<Vec3> m;
};

struct Developed {
    std::vector<double> s;
    std::vector<ParamJet> jets;
};

std::size_t interval_index(const std::vector<double>& knots, double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::min(i, knots.size() - 2);
}

Spline make_spline(std::vector<double> t, std::vector<Vec3> y) {
    const std::size_t n = t.size();
    std::vector<Vec3> m(n, Vec3::Zero());
    if (n > 2) {
        // Thomas algorithm on the interior equations, M_0 = M_{n-1} = 0.
        std::vector<double> diag(n, 0.0), upper(n, 0.0);
        std::vector<Vec3> rhs(n, Vec3::Zero());
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            if (i > 1) {
                const double w = h0 / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }
    return Spline{std::move(t), std::move(y), std::move(m)};
}

ParamJet eval_spline(const Spline& sp, double t) {
    const std::size_t i = interval_index(sp.t, t);
    const double h = sp.t[i + 1] - sp.t[i];
    const double x = t - sp.t[i];
    const Vec3& m0 = sp.m[i];
    const Vec3& m1 = sp.m[i + 1];
    const Vec3 b = (sp.y[i + 1] - sp.y[i]) / h - h * (2.0 * m0 + m1) / 6.0;
    const Vec3 c3 = (m1 - m0) / (6.0 * h);
    ParamJet j;
    j.pos = sp.y[i] + x * (b + x * (0.5 * m0 + x * c3));
    j.d1 = b + x * (m0 + 3.0 * x * c3);
    j.d2 = m0 + 6.0 * x * c3;
    j.d3 = 6.0 * c3;
    return j;
}

ParamJet eval_developed(const Developed& d, double s) {
    const std::size_t i = interval_index(d.s, s);
    if (s == d.s[i]) return d.jets[i];
    if (s == d.s[i + 1]) return d.jets[i + 1];
    const ParamJet& a = d.jets[i];
    const ParamJet& b = d.jets[i + 1];
    const double h = d.s[i + 1] - d.s[i];
    const double x = s - d.s[i];
    const Vec3 r0 = b.pos - (a.pos + h * a.d1 + 0.5 * h * h * a.d2);
    const Vec3 r1 = b.d1 - (a.d1 + h * a.d2);
    const Vec3 r2 = b.d2 - a.d2;
    const Vec3 c3 = (20.0 * r0 - 8.0 * h * r1 + h * h * r2) / (2.0 * h * h * h);
    const Vec3 c4 = (-15.0 * r0 + 7.0 * h * r1 - h * h * r2) / (h * h * h * h);
    const Vec3 c5 = (12.0 * r0 - 6.0 * h * r1 + h * h * r2) / (2.0 * h * h * h * h * h);
    ParamJet j;
    j.pos = a.pos + x * (a.d1 + x * (0.5 * a.d2 + x * (c3 + x * (c4 + x * c5))));
    j.d1 = a.d1 + x * (a.d2 + x * (3.0 * c3 + x * (4.0 * c4 + x * 5.0 * c5)));
    j.d2 = a.d2 + x * (6.0 * c3 + x * (12.0 * c4 + x * 20.0 * c5));
    j.d3 = 6.0 * c3 + x * (24.0 * c4 + x * 60.0 * c5);
    return j;
}

}  // namespace

struct CurveSpec::Impl {
    std::string name;
    double t_min = 0.0, t_max = 1.0;
    std::variant<Analytic, Spline, Developed> shape;
};

std::string_view to_string(CurveKind k) {
    switch (k) {
        case CurveKind::analytic: return "analytic";
        case CurveKind::sampled: return "sampled";
        case CurveKind::development_derived: return "development-derived";
    }
    return "?";
}

CurveSpec CurveSpec::analytic(std::array<Expr, 3> coords, double t_min, double t_max,
                              std::string name) {
    if (!(t_min < t_max)) throw std::invalid_argument("empty or inverted domain");
    return CurveSpec(std::make_shared<const Impl>(Impl{std::move(name), t_min, t_max, Analytic{std::move(coords)}}));
}

CurveSpec CurveSpec::sampled(std::vector<double> t, std::vector<Vec3> points, std::string name) {
    if (t.size() != points.size()) throw std::invalid_argument("parameter/point count mismatch");
    if (t.size() < 4) throw std::invalid_argument("sampled curve needs at least 4 points");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("parameter values must increase strictly");
    for (const auto& p : points)
        if (!p.allFinite()) throw std::invalid_argument("non-finite sample");
    const double a = t.front(), b = t.back();
    return CurveSpec(std::make_shared<const Impl>(Impl{std::move(name), a, b, make_spline(std::move(t), std::move(points))}));
}

CurveSpec CurveSpec::developed(std::vector<double> s, std::vector<ParamJet> jets, std::string name) {
    if (s.size() != jets.size() || s.size() < 2)
        throw std::invalid_argument("developed curve needs matching nodes and jets");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] > s[i - 1])) throw std::invalid_argument("nodes must increase strictly");
    const double a = s.front(), b = s.back();
    return CurveSpec(std::make_shared<const Impl>(Impl{std::move(name), a, b, Developed{std::move(s), std::move(jets)}}));
}

CurveKind CurveSpec::kind() const {
    switch (impl_->shape.index()) {
        case 0: return CurveKind::analytic;
        case 1: return CurveKind::sampled;
        default: return CurveKind::development_derived;
    }
}

double CurveSpec::t_min() const { return impl_->t_min; }
double CurveSpec::t_max() const { return impl_->t_max; }
const std::string& CurveSpec::name() const { return impl_->name; }

std::string_view CurveSpec::interpolation() const {
    switch (kind()) {
        case CurveKind::analytic: return "exact";
        case CurveKind::sampled: return "natural-cubic-spline";
        case CurveKind::development_derived: return "quintic-hermite";
    }
    return "?";
}

std::vector<double> CurveSpec::breakpoints() const {
    if (const auto* sp = std::get_if<Spline>(&impl_->shape)) return sp->t;
    if (const auto* d = std::get_if<Developed>(&impl_->shape)) return d->s;
    return {impl_->t_min, impl_->t_max};
}

const std::vector<double>& CurveSpec::nodes() const {
    static const std::vector<double> none;
    if (const auto* d = std::get_if<Developed>(&impl_->shape)) return d->s;
    return none;
}

ParamJet CurveSpec::eval_jet(double t) const {
    if (!(t >= impl_->t_min && t <= impl_->t_max))
        throw DomainError("parameter " + std::to_string(t) + " outside the curve domain");
    if (const auto* a = std::get_if<Analytic>(&impl_->shape)) {
        const Jet tj = Jet::variable(t);
        ParamJet j;
        for (int k = 0; k < 3; ++k) {
            const Jet c = a->coords[k].eval(tj);
            j.pos[k] = c.c[0];
            j.d1[k] = c.derivative(1);
            j.d2[k] = c.derivative(2);
            j.d3[k] = c.derivative(3);
        }
        return j;
    }
    if (const auto* sp = std::get_if<Spline>(&impl_->shape)) return eval_spline(*sp, t);
    return eval_developed(std::get<Developed>(impl_->shape), t);
}

CurveSpec parse_curve_spec(std::string_view text) {
    CurveDefinition def = parse_curve(text);
    return CurveSpec::analytic(def.coords, def.t_min, def.t_max, std::string(text));
}

CurveJet to_arclength(const ParamJet& pj, double s) {
    const Vec3& g1 = pj.d1;
    const Vec3& g2 = pj.d2;
    const Vec3& g3 = pj.d3;
    const double s1 = g1.norm();
    if (!(s1 > 0.0)) throw NotRegularError(std::numeric_limits<double>::quiet_NaN(), s1);
    const double g12 = g1.dot(g2);
    const double s2 = g12 / s1;
    const double s3 = (g2.squaredNorm() + g1.dot(g3)) / s1 - g12 * g12 / (s1 * s1 * s1);
    const double t1 = 1.0 / s1;
    const double t2 = -s2 / (s1 * s1 * s1);
    const double t3 = (3.0 * s2 * s2 - s1 * s3) / std::pow(s1, 5);
    CurveJet j;
    j.s = s;
    j.gamma = pj.pos;
    j.d1 = g1 * t1;
    j.d2 = g2 * (t1 * t1) + g1 * t2;
    j.d3 = g3 * (t1 * t1 * t1) + 3.0 * t1 * t2 * g2 + g1 * t3;
    return j;
}

std::size_t default_samples(double length) {
    return std::max<std::size_t>(16, static_cast<std::size_t>(std::llround(2000.0 * length)) + 1);
}

struct ArcLengthCurve::Impl {
    struct Panel {
        double a, b;    // parameter interval
        double sa, sb;  // cumulative arclength at a and b
        double va, vb;  // speed at a and b
    };

    CurveSpec spec;
    bool identity = false;  // unit-speed source: s == t
    double length = 0.0;
    std::vector<Panel> panels;
    std::vector<double> grid;
    std::vector<CurveJet> jets, mids;

    explicit Impl(CurveSpec s) : spec(std::move(s)) {}

    double speed(double t) const { return spec.eval_jet(t).d1.norm(); }

    double gl(double a, double b) const {
        return boost::math::quadrature::gauss<double, 20>::integrate(
            [this](double t) { return speed(t); }, a, b);
    }

    void refine(double a, double b, double whole, int depth, std::vector<std::pair<double, double>>& out,
                std::vector<double>& values) const {
        const double m = 0.5 * (a + b);
        const double l = gl(a, m), r = gl(m, b);
        if (depth >= 20 || std::abs(l + r - whole) <= 1e-15 * std::max(std::abs(l + r), 1e-300)) {
            out.emplace_back(a, m);
            values.push_back(l);
            out.emplace_back(m, b);
            values.push_back(r);
            return;
        }
        refine(a, m, l, depth + 1, out, values);
        refine(m, b, r, depth + 1, out, values);
    }

    void build_table() {
        std::vector<std::pair<double, double>> leaves;
        std::vector<double> values;
        const std::vector<double> knots = initial_knots();
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
            refine(knots[i], knots[i + 1], gl(knots[i], knots[i + 1]), 0, leaves, values);
        panels.reserve(leaves.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            Panel p{leaves[i].first, leaves[i].second, acc, acc + values[i], 0.0, 0.0};
            acc += values[i];
            p.va = speed(p.a);
            p.vb = speed(p.b);
            panels.push_back(p);
        }
        length = acc;
    }

    // Spline pieces (if any), each split so that there are at least 64 panels overall.
    std::vector<double> initial_knots() const {
        const std::vector<double> pieces = spec.breakpoints();
        const std::size_t per = std::max<std::size_t>(1, (64 + pieces.size() - 2) / (pieces.size() - 1));
        std::vector<double> knots;
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
            for (std::size_t k = 0; k < per; ++k)
                knots.push_back(pieces[i] + (pieces[i + 1] - pieces[i]) * static_cast<double>(k) /
                                                static_cast<double>(per));
        knots.push_back(pieces.back());
        return knots;
    }

    void check_regular() const {
        const double a = spec.t_min(), b = spec.t_max();
        const std::size_t n = std::max<std::size_t>(4000, 4 * panels.size());
        std::vector<double> ts(n), vs(n);
        double vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            vs[i] = speed(ts[i]);
            if (vs[i] < kTolSpeed) throw NotRegularError(ts[i], vs[i]);
            vmax = std::max(vmax, vs[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const bool left_ok = i == 0 || vs[i] < vs[i - 1];
            const bool right_ok = i + 1 == n || vs[i] < vs[i + 1];
            if (!(left_ok && right_ok) || vs[i] >= 1e-3 * vmax) continue;
            const double lo = ts[i == 0 ? 0 : i - 1];
            const double hi = ts[i + 1 == n ? i : i + 1];
            const auto [tmin, v2] = boost::math::tools::brent_find_minima(
                [this](double t) { return spec.eval_jet(t).d1.squaredNorm(); }, lo, hi, 52);
            if (std::sqrt(v2) < kTolSpeed) throw NotRegularError(tmin, std::sqrt(v2));
        }
    }

    double lookup(double s) const {
        if (identity) return std::clamp(s, spec.t_min(), spec.t_max());
        if (s <= 0.0) return spec.t_min();
        if (s >= length) return spec.t_max();
        auto it = std::upper_bound(panels.begin(), panels.end(), s,
                                   [](double v, const Panel& p) { return v < p.sa; });
        const Panel& p = *(it == panels.begin() ? it : it - 1);
        // Monotone cubic Hermite guess for t(s) on the panel, then safeguarded Newton.
        const double ds = p.sb - p.sa;
        const double dt = p.b - p.a;
        const double sec = dt / ds;
        const double m0 = std::clamp(1.0 / p.va, 0.0, 3.0 * sec);
        const double m1 = std::clamp(1.0 / p.vb, 0.0, 3.0 * sec);
        const double u = (s - p.sa) / ds;
        const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
        const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
        double t = p.a * h00 + ds * m0 * h10 + p.b * h01 + ds * m1 * h11;
        double lo = p.a, hi = p.b;
        t = std::clamp(t, lo, hi);
        for (int iter = 0; iter < 60; ++iter) {
            const double f = p.sa + gl(p.a, t) - s;
            if (f == 0.0) break;
            if (f > 0.0) hi = t;
            else lo = t;
            double next = t - f / speed(t);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - t) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), dt))
                return next;
            t = next;
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), dt)) break;
        }
        return t;
    }

    double cumulative(double t) const {
        if (identity) return t;
        if (t <= spec.t_min()) return 0.0;
        if (t >= spec.t_max()) return length;
        auto it = std::upper_bound(panels.begin(), panels.end(), t,
                                   [](double v, const Panel& p) { return v < p.a; });
        const Panel& p = *(it == panels.begin() ? it : it - 1);
        return p.sa + gl(p.a, t);
    }

    CurveJet jet(double s) const {
        const double t = lookup(s);
        try {
            return to_arclength(spec.eval_jet(t), s);
        } catch (const NotRegularError&) {
            throw NotRegularError(t, 0.0);
        }
    }
};

ArcLengthCurve ArcLengthCurve::build(const CurveSpec& spec, std::size_t n_samples) {
    auto impl = std::make_shared<Impl>(spec);
    double s0 = 0.0;
    if (spec.kind() == CurveKind::development_derived) {
        impl->identity = true;
        impl->length = spec.t_max() - spec.t_min();
        s0 = spec.t_min();
        if (n_samples == 0) impl->grid = spec.nodes();
    } else {
        impl->check_regular();
        impl->build_table();
    }
    if (impl->grid.empty()) {
        const std::size_t n = n_samples == 0 ? default_samples(impl->length) : n_samples;
        if (n < 2) throw std::invalid_argument("need at least 2 samples");
        impl->grid.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            impl->grid[i] = s0 + impl->length * static_cast<double>(i) / static_cast<double>(n - 1);
        impl->grid.back() = s0 + impl->length;
    }
    const auto& g = impl->grid;
    impl->jets.reserve(g.size());
    for (double s : g) impl->jets.push_back(impl->jet(s));
    impl->mids.reserve(g.size() - 1);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) impl->mids.push_back(impl->jet(0.5 * (g[i] + g[i + 1])));
    return ArcLengthCurve(std::move(impl));
}

const CurveSpec& ArcLengthCurve::source() const { return impl_->spec; }
double ArcLengthCurve::total_length() const { return impl_->length; }
const std::vector<double>& ArcLengthCurve::grid() const { return impl_->grid; }
const std::vector<CurveJet>& ArcLengthCurve::jets() const { return impl_->jets; }
const std::vector<CurveJet>& ArcLengthCurve::midpoint_jets() const { return impl_->mids; }
double ArcLengthCurve::t_of_s(double s) const { return impl_->lookup(s); }
double ArcLengthCurve::s_of_t(double t) const { return impl_->cumulative(t); }
CurveJet ArcLengthCurve::jet_at(double s) const { return impl_->jet(s); }

}  // namespace framecast
