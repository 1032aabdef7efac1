// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "framecast/gallery.hpp"
#include "framecast/pipeline.hpp"

using namespace framecast;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> failures;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FrameResult frame_entry(const std::string& name, std::size_t samples = 0) {
    const GalleryEntry& e = gallery_entry(name);
    FrameOptions o;
    o.samples = samples ? samples : e.samples;
    if (e.is_curve()) return frame_curve(e.curve(), o);
    return frame_curve(reconstruct_spec(e.development()), o);
}

double proj_error(const NormalDevelopment& nd, const PolarLift& l) {
    double worst = 0.0;
    for (std::size_t i = 0; i < nd.size(); ++i) {
        const Vec2 p(l.r_tilde[i] * std::cos(l.theta_tilde[i]), l.r_tilde[i] * std::sin(l.theta_tilde[i]));
        worst = std::max(worst, (p - nd.k[i]).norm());
    }
    return worst;
}

// Analytic curve whose coordinates are R * gamma + b.
CurveSpec moved(const CurveSpec& c, const Eigen::Matrix3d& R, const Vec3& b, const std::array<Expr, 3>& f) {
    std::array<Expr, 3> g{Expr::number(b.x()), Expr::number(b.y()), Expr::number(b.z())};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) g[r] = g[r] + Expr::number(R(r, k)) * f[k];
    return CurveSpec::analytic(g, c.t_min(), c.t_max(), c.name() + "_moved");
}

// Criterion 1.
void planar_agreement(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const FrameResult r = frame_entry("inflection");
    c.require(r.beta.has_value(), "inflection curve has no beta frame");
    if (!r.beta) return;
    const auto plane = is_planar(r.curve);
    c.require(plane.has_value(), "inflection curve not detected as planar");
    if (!plane) return;
    const auto planar = planar_field(r.curve, *plane);
    double dk = 0.0, dn = 0.0;
    for (std::size_t i = 0; i < planar.size(); ++i) {
        dk = std::max(dk, std::abs(r.beta->samples[i].kappa - planar[i].kappa_signed));
        dn = std::max(dn, (r.beta->samples[i].N - embed(*plane, planar[i].N_good)).norm());
    }
    c.require(dk <= 1e-6, "kappa_beta vs kappa_signed deviates by " + num(dk));
    c.require(dn <= 1e-6, "N_beta vs N_good deviates by " + num(dn));

    std::size_t sign_changes = 0;
    for (std::size_t i = 0; i + 1 < planar.size(); ++i)
        if ((planar[i].kappa_signed > 0) != (planar[i + 1].kappa_signed > 0) && planar[i + 1].kappa_signed != 0.0)
            ++sign_changes;
    c.require(sign_changes == 1, "kappa_signed changes sign " + std::to_string(sign_changes) + " times");

    double flank = 1.0;
    for (const auto& a : r.lift.analyses) {
        const std::size_t lo = a.zero.first > 0 ? a.zero.first - 1 : 0;
        const std::size_t hi = std::min(a.zero.last + 1, r.beta->samples.size() - 1);
        flank = std::min(flank, r.beta->samples[lo].N.dot(r.beta->samples[hi].N));
    }
    c.require(!r.lift.analyses.empty(), "no curvature zero found at the inflection");
    c.require(flank > 0.99, "flanking N_beta dot product " + num(flank));
    const double dt = seconds_since(t0);
    c.require(dt < 5.0, "runtime " + num(dt) + " s");
    c.notes << "max |dk|=" << num(dk) << " max |dN|=" << num(dn) << " flank=" << num(flank) << " " << num(dt) << "s";
}

// Criterion 2.
void frenet_consistency(Criterion& c) {
    for (const char* name : {"circle", "helix11", "sphere"}) {
        const FrameResult r = frame_entry(name);
        c.require(r.beta.has_value(), std::string(name) + ": no beta frame");
        if (!r.beta) continue;
        double dk = 0.0, dn = 0.0, dt = 0.0;
        for (std::size_t i = 0; i < r.frenet.size(); ++i) {
            const FrenetSample& f = r.frenet[i];
            const BetaSample& b = r.beta->samples[i];
            if (!(f.kappa_f > kTolKappa)) continue;
            dk = std::max(dk, std::abs(std::abs(b.kappa) - f.kappa_f));
            dn = std::max(dn, 1.0 - std::abs(b.N.dot(*f.N_f)));
            if (b.tau) dt = std::max(dt, std::abs(*b.tau - *f.tau_f));
        }
        c.require(dk <= 1e-6, std::string(name) + ": ||kappa_beta|-kappa_f| = " + num(dk));
        c.require(dn <= 1e-6, std::string(name) + ": 1-|N_beta.N_f| = " + num(dn));
        c.require(dt <= 1e-5, std::string(name) + ": |tau_beta-tau_f| = " + num(dt));
        c.notes << name << "(" << num(dk) << "," << num(dn) << "," << num(dt) << ") ";
    }
}

// Criterion 3. The oracle differentiates the closed-form arclength helix by finite differences.
void helix_values(Criterion& c) {
    const double a = 1.0 / std::numbers::sqrt2;
    auto g = [a](double s) { return Vec3(std::cos(a * s), std::sin(a * s), a * s); };
    const double h = 1e-2;
    double k_or = 0.0, t_or = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double s = 0.37 * k + 0.1;
        const Vec3 d1 = (-g(s + 2 * h) + 8 * g(s + h) - 8 * g(s - h) + g(s - 2 * h)) / (12 * h);
        const Vec3 d2 = (-g(s + 2 * h) + 16 * g(s + h) - 30 * g(s) + 16 * g(s - h) - g(s - 2 * h)) / (12 * h * h);
        const Vec3 d3 = (-g(s + 3 * h) + 8 * g(s + 2 * h) - 13 * g(s + h) + 13 * g(s - h) - 8 * g(s - 2 * h) +
                         g(s - 3 * h)) / (8 * h * h * h);
        const double kap = d2.norm();
        k_or += kap / 20;
        t_or += d1.cross(d2).dot(d3) / (kap * kap) / 20;
    }
    c.require(std::abs(k_or - 0.5) < 1e-6 && std::abs(t_or - 0.5) < 1e-6,
              "oracle disagrees with 1/2: " + num(k_or) + ", " + num(t_or));

    const FrameResult r = frame_entry("helix11");
    c.require(r.beta.has_value(), "helix has no beta frame");
    if (!r.beta) return;
    double dk = 0.0, dt = 0.0;
    for (std::size_t i = 0; i < r.frenet.size(); ++i) {
        dk = std::max({dk, std::abs(r.frenet[i].kappa_f - k_or), std::abs(std::abs(r.beta->samples[i].kappa) - k_or)});
        dt = std::max({dt, std::abs(*r.frenet[i].tau_f - t_or),
                       r.beta->samples[i].tau ? std::abs(*r.beta->samples[i].tau - t_or) : 1.0});
    }
    c.require(dk <= 1e-6, "kappa deviates by " + num(dk));
    c.require(dt <= 1e-6, "tau deviates by " + num(dt));

    const NormalDevelopment& nd = r.development;
    double dr = 0.0;
    std::vector<double> speed;
    double prev = std::atan2(nd.k[0].y(), nd.k[0].x());
    for (std::size_t i = 0; i < nd.size(); ++i) {
        dr = std::max(dr, std::abs(nd.k[i].norm() - 0.5));
        if (i == 0) continue;
        double ang = std::atan2(nd.k[i].y(), nd.k[i].x());
        ang = prev + std::remainder(ang - prev, 2 * kPi);
        speed.push_back((ang - prev) / (nd.s[i] - nd.s[i - 1]));
        prev = ang;
    }
    const auto [lo, hi] = std::minmax_element(speed.begin(), speed.end());
    c.require(dr <= 1e-6, "development radius deviates by " + num(dr));
    c.require(*hi - *lo <= 1e-5, "angular speed varies by " + num(*hi - *lo));
    c.require(std::abs(std::abs(*lo) - 0.5) <= 1e-5, "angular speed " + num(*lo));
    c.notes << "kappa dev " << num(dk) << ", tau dev " << num(dt) << ", radius dev " << num(dr)
            << ", speed variation " << num(*hi - *lo);
}

// Criterion 4.
void lemma_classification(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"fig3a", "fig3b", "fig3c"}) {
        const LiftResult r = lift_only(gallery_entry(name).development());
        c.require(r.lift.verdict == Verdict::not_liftable, std::string(name) + " is " + std::string(to_string(r.lift.verdict)));
    }
    for (const char* name : {"fig4a", "fig4b", "fig4c", "fig5"}) {
        const LiftResult r = lift_only(gallery_entry(name).development());
        c.require(r.lift.liftable(), std::string(name) + " is " + std::string(to_string(r.lift.verdict)));
        c.require(r.analyses.size() == 1, std::string(name) + ": expected one zero");
        if (r.analyses.size() != 1) continue;
        const auto& a = r.analyses.front();
        const double dp = a.theta_plus.theta ? std::abs(*a.theta_plus.theta - kPi / 4) : 1.0;
        const double dm = a.theta_minus.theta ? std::abs(*a.theta_minus.theta - kPi / 4) : 1.0;
        c.require(dp <= 1e-3 && dm <= 1e-3, std::string(name) + ": theta+/- off by " + num(std::max(dp, dm)));
    }
    const FrameResult sp = frame_entry("spivak");
    c.require(sp.lift.lift.verdict == Verdict::not_liftable, "spivak is " + std::string(to_string(sp.lift.lift.verdict)));
    const auto& f = sp.lift.lift.failure;
    const double mis = f && f->mismatch ? *f->mismatch : 0.0;
    c.require(std::abs(mis - kPi / 2) <= 1e-3, "spivak mismatch " + num(mis));
    const double dt = seconds_since(t0);
    c.require(dt < 10.0, "runtime " + num(dt) + " s");
    c.notes << "spivak mismatch " << num(mis) << ", " << num(dt) << "s";
}

std::size_t zero_index(const BetaField& b) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < b.grid.size(); ++i)
        if (std::abs(b.grid[i]) < std::abs(b.grid[z])) z = i;
    return z;
}

// Criterion 5.
void c1_caveat(Criterion& c) {
    {
        const NormalDevelopment& nd = gallery_entry("fig6").development();
        const LiftResult l = lift_only(nd);
        c.require(l.lift.liftable(), "fig6 not liftable");
        c.require(l.lift.c1_flags.size() == 1 && !l.lift.c1_flags[0], "fig6 c1_check is not false");
        const FrameResult r = frame_entry("fig6");
        c.require(r.beta.has_value(), "fig6 curve has no beta frame");
        if (r.beta) {
            const std::size_t z = zero_index(*r.beta);
            std::size_t absent = 0;
            for (std::size_t i = 0; i < r.beta->samples.size(); ++i) {
                const auto& t = r.beta->samples[i].tau;
                if (!t) ++absent;
                else c.require(std::isfinite(*t), "fig6 tau not finite at " + std::to_string(i));
            }
            c.require(!r.beta->samples[z].tau && absent == 1,
                      "fig6 tau_beta absent at " + std::to_string(absent) + " samples");
        }
    }
    {
        const LiftResult l = lift_only(gallery_entry("fig4a").development());
        c.require(l.lift.liftable() && l.lift.c1_flags.size() == 1 && l.lift.c1_flags[0], "fig4a c1_check is not true");
        const FrameResult r = frame_entry("fig4a");
        c.require(r.beta.has_value(), "fig4a curve has no beta frame");
        if (r.beta) {
            const auto& t = r.beta->samples[zero_index(*r.beta)].tau;
            c.require(t && std::abs(*t - 1.0) <= 1e-2, "fig4a tau_beta at the zero " + (t ? num(*t) : std::string("absent")));
            if (t) c.notes << "fig4a tau at zero " << num(*t);
        }
    }
}

// Criterion 6.
void recovered_frenet(Criterion& c) {
    for (const char* name : {"circle", "helix11"}) {
        const GalleryEntry& e = gallery_entry(name);
        const double L = ArcLengthCurve::build(e.curve(), 16).total_length();
        const auto n = static_cast<std::size_t>(std::llround(L / 1e-3)) + 1;
        const FrameResult coarse = frame_entry(name, n);
        const FrameResult fine = frame_entry(name, 2 * n - 1);
        if (!coarse.beta || !fine.beta) {
            c.require(false, std::string(name) + ": no beta frame");
            continue;
        }
        const BetaResiduals a = frenet_residuals(*coarse.beta);
        const BetaResiduals b = frenet_residuals(*fine.beta);
        const double ra[3] = {a.tangent, a.normal, a.binormal};
        const double rb[3] = {b.tangent, b.normal, b.binormal};
        const char* label[3] = {"T'", "N'", "B'"};
        c.notes << name << " h=" << num(a.h);
        for (int k = 0; k < 3; ++k) {
            c.require(ra[k] <= 1e-5, std::string(name) + " " + label[k] + " residual " + num(ra[k]));
            const bool roundoff = ra[k] <= 1e-12;
            const double ratio = rb[k] > 0 ? ra[k] / rb[k] : INFINITY;
            c.require(roundoff || ratio >= 3.5, std::string(name) + " " + label[k] + " ratio " + num(ratio) + " (" + num(ra[k]) + " -> " + num(rb[k]) + ")");
            c.notes << " " << label[k] << "=" << num(ra[k]) << (roundoff ? "(roundoff)" : " ratio " + num(ratio));
        }
        c.notes << "; ";
    }
}

// Criterion 7.
void round_trips(Criterion& c) {
    double worst_rt = 0.0, worst_proj = 0.0;
    for (const GalleryEntry& e : gallery()) {
        if (e.is_curve()) {
            if (e.expected.verdict != Verdict::liftable) continue;
            const FrameResult r = frame_entry(e.name);
            worst_proj = std::max(worst_proj, proj_error(r.development, r.lift.lift));
            const BishopSample& b0 = r.bishop.samples.front();
            Seed seed{r.curve.jets().front().gamma, b0.T, b0.M1, b0.M2};
            const ArcLengthCurve back = reconstruct(r.development, seed);
            const NormalDevelopment out = normal_development(transport(back, InitialFrame{0, b0.M1, b0.M2}));
            double err = 0.0;
            for (std::size_t i = 0; i < out.size(); ++i) err = std::max(err, (out.k[i] - r.development.k[i]).norm());
            c.require(err <= 1e-6, e.name + ": round-trip error " + num(err));
            worst_rt = std::max(worst_rt, err);
            continue;
        }
        const NormalDevelopment& nd = e.development();
        const LiftResult l = lift_only(nd);
        if (!l.lift.liftable()) continue;
        worst_proj = std::max(worst_proj, proj_error(nd, l.lift));
        const Seed seed;
        const ArcLengthCurve back = reconstruct(nd, seed);
        const NormalDevelopment out = normal_development(transport(back, InitialFrame{0, seed.M1, seed.M2}));
        double err = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) err = std::max(err, (out.k[i] - nd.k[i]).norm());
        c.require(err <= 1e-6, e.name + ": round-trip error " + num(err));
        worst_rt = std::max(worst_rt, err);
    }
    c.require(worst_proj <= 1e-9, "projection identity error " + num(worst_proj));
    c.notes << "round-trip " << num(worst_rt) << ", projection " << num(worst_proj);
}

// Criterion 8.
void invariances(Criterion& c) {
    const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
    const Vec3 b(0.3, -1.2, 2.5);
    struct Case {
        const char* name;
        std::array<const char*, 3> coords;
    };
    const Case cases[] = {
        {"helix11", {"cos(t)", "sin(t)", "t"}},
        {"sphere", {"(1+cos(t))/2", "sin(t)/2", "sin(t/2)"}},
        {"inflection", {"t", "t^3", "0"}},
    };
    double rigid = 0.0, base_dev = 0.0, reparam = 0.0;
    for (const Case& k : cases) {
        const GalleryEntry& e = gallery_entry(k.name);
        const std::array<Expr, 3> f{parse_expression(k.coords[0]), parse_expression(k.coords[1]),
                                    parse_expression(k.coords[2])};
        FrameOptions o;
        o.samples = e.samples;
        const FrameResult r0 = frame_curve(e.curve(), o);
        const FrameResult r1 = frame_curve(moved(e.curve(), R, b, f), o);
        if (!r0.beta || !r1.beta) {
            c.require(false, std::string(k.name) + ": no beta frame");
            continue;
        }
        for (std::size_t i = 0; i < r0.beta->samples.size(); ++i) {
            const auto& p = r0.beta->samples[i];
            const auto& q = r1.beta->samples[i];
            rigid = std::max(rigid, std::abs(p.kappa - q.kappa));
            if (p.tau && q.tau) rigid = std::max(rigid, std::abs(*p.tau - *q.tau));
            else if (p.tau.has_value() != q.tau.has_value()) rigid = INFINITY;
        }

        FrameOptions ob = o;
        ob.base_index = r0.curve.size() / 3;
        if (r0.frenet[*ob.base_index].kappa_f <= kTolKappa) ++*ob.base_index;
        const FrameResult rb = frame_curve(e.curve(), ob);
        if (!rb.beta) {
            c.require(false, std::string(k.name) + ": no beta frame from the second base point");
            continue;
        }
        const double sigma = rb.beta->samples[0].N.dot(r0.beta->samples[0].N) > 0 ? 1.0 : -1.0;
        double dev = 0.0;
        for (std::size_t i = 0; i < rb.beta->samples.size(); ++i) {
            dev = std::max(dev, (rb.beta->samples[i].N - sigma * r0.beta->samples[i].N).norm());
            dev = std::max(dev, (rb.beta->samples[i].B - sigma * r0.beta->samples[i].B).norm());
        }
        c.require(dev <= 1e-6, std::string(k.name) + ": base-point change is not a global sign, deviation " + num(dev));
        base_dev = std::max(base_dev, dev);
    }
    c.require(rigid <= 1e-8, "rigid motion changes kappa/tau by " + num(rigid));

    // t = u + 0.1 u^2 maps [0, u1] onto [0, 2 pi]; the base point stays at the start.
    const double u1 = (std::sqrt(1 + 0.8 * kPi) - 1) / 0.2;
    const Expr u = Expr::param();
    const Expr phi = u + Expr::number(0.1) * u * u;
    const CurveSpec helix = gallery_entry("helix11").curve();
    const CurveSpec rep = CurveSpec::analytic({Expr::call(Func::cos, phi), Expr::call(Func::sin, phi), phi}, 0.0, u1);
    const FrameResult a = frame_curve(helix);
    FrameOptions o;
    o.samples = a.curve.size();
    const FrameResult bb = frame_curve(rep, o);
    if (a.beta && bb.beta) {
        for (std::size_t i = 0; i < a.beta->samples.size(); ++i) {
            const auto& p = a.beta->samples[i];
            const auto& q = bb.beta->samples[i];
            reparam = std::max({reparam, (p.T - q.T).norm(), (p.N - q.N).norm(), (p.B - q.B).norm(),
                                std::abs(p.kappa - q.kappa), p.tau && q.tau ? std::abs(*p.tau - *q.tau) : 0.0});
        }
    } else {
        c.require(false, "reparametrized helix has no beta frame");
    }
    c.require(reparam <= 1e-8, "reparametrization changes the beta field by " + num(reparam));
    c.notes << "rigid " << num(rigid) << ", base-point sign deviation " << num(base_dev) << ", reparametrization "
            << num(reparam);
}

// Criterion 9.
void spherical(Criterion& c) {
    const FrameResult r = frame_entry("sphere");
    const LineFit fit = fit_line(r.development);
    c.require(fit.max_deviation <= 1e-6, "development deviates from its line by " + num(fit.max_deviation));
    c.require(fit.distance_from_origin >= 0.1, "line distance from origin " + num(fit.distance_from_origin));
    c.notes << "line deviation " << num(fit.max_deviation) << ", distance " << num(fit.distance_from_origin);
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        std::function<void(Criterion&)> run;
    };
    const Entry entries[] = {
        {1, "planar agreement with the signed-curvature frame", planar_agreement},
        {2, "consistency with the Frenet frame", frenet_consistency},
        {3, "helix curvature, torsion and development", helix_values},
        {4, "liftability classification of the example developments", lemma_classification},
        {5, "C1 caveat at a cube-root zero", c1_caveat},
        {6, "recovered Frenet equations converge at second order", recovered_frenet},
        {7, "reconstruction and projection round-trips", round_trips},
        {8, "rigid-motion, base-point and reparametrization invariance", invariances},
        {9, "spherical curve development lies on a line", spherical},
    };
    int failed = 0;
    for (const Entry& e : entries) {
        Criterion c{e.id, e.title, {}, {}};
        try {
            e.run(c);
        } catch (const std::exception& ex) {
            c.failures.push_back(std::string("exception: ") + ex.what());
        }
        if (c.failures.empty()) {
            std::printf("PASS criterion %d: %s [%s]\n", c.id, c.title.c_str(), c.notes.str().c_str());
        } else {
            ++failed;
            std::string why;
            for (const auto& f : c.failures) why += (why.empty() ? "" : "; ") + f;
            std::printf("FAIL criterion %d: %s: %s\n", c.id, c.title.c_str(), why.c_str());
        }
    }
    std::printf("%d of 9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
