#include "framecast/lift.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "framecast/errors.hpp"

namespace framecast {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kLevels = 9;       // dyadic offsets 1, 2, ..., 256
constexpr std::size_t kFlankWindow = 50;
constexpr std::size_t kAxisWindow = 32;
constexpr double kUnderflowBorder = 1e-200;

Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// theta' = phi + k pi closest to ref.
double nearest_branch(double phi, double ref) { return phi + kPi * std::round((ref - phi) / kPi); }

double wrap_pi(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a <= -kPi + 1e-12 ? a + 2.0 * kPi : a;
}

double fold_distance(double a, double b) {
    const double d = std::abs(std::remainder(a - b, kPi));
    return std::min(d, kPi - d);
}

// Angle between two nonzero vectors, in [0, pi].
double turn(const Vec2& a, const Vec2& b) {
    return std::atan2(std::abs(a.x() * b.y() - a.y() * b.x()), a.dot(b));
}

// Values ordered far to near. Aitken extrapolation over four consecutive values when the
// two difference ratios agree, then a Cauchy test on the last three estimates.
std::optional<double> sequence_limit(const std::vector<double>& vals, double tol) {
    if (vals.size() < 3) return std::nullopt;
    std::vector<double> est;
    if (vals.size() < 6) {
        est = vals;
    } else {
        for (std::size_t k = 0; k + 3 < vals.size(); ++k) {
            const double d0 = vals[k + 1] - vals[k];
            const double d1 = vals[k + 2] - vals[k + 1];
            const double d2 = vals[k + 3] - vals[k + 2];
            double e = vals[k + 3];
            if (std::max({std::abs(d0), std::abs(d1), std::abs(d2)}) >= 1e-13 && std::abs(d0) > 1e-300 &&
                std::abs(d1) > 1e-300) {
                const double r1 = d1 / d0, r2 = d2 / d1;
                if (r1 > 0.0 && r1 < 0.9 && r2 > 0.0 && r2 < 0.9 && std::abs(r1 - r2) <= 0.05)
                    e += d2 * r2 / (1.0 - r2);
            }
            est.push_back(e);
        }
    }
    const std::size_t m = est.size();
    if (std::abs(est[m - 1] - est[m - 2]) > tol || std::abs(est[m - 2] - est[m - 3]) > tol)
        return std::nullopt;
    return est[m - 1];
}

std::vector<double> norms_of(const NormalDevelopment& nd) {
    std::vector<double> out(nd.size());
    for (std::size_t i = 0; i < nd.size(); ++i) out[i] = std::hypot(nd.k[i].x(), nd.k[i].y());
    return out;
}

// Samples usable for one-sided limits, nearest first.
std::vector<std::size_t> side_samples(const std::vector<double>& norm, const ZeroRecord& z, Side side,
                                      const LiftTolerances& tol, std::size_t cap) {
    std::vector<std::size_t> out;
    const long n = static_cast<long>(norm.size());
    const long dir = side == Side::plus ? 1 : -1;
    if (z.between_samples) {
        out.push_back(side == Side::plus ? z.last : z.first);
        return out;
    }
    long j;
    if (z.long_run && z.has_core())
        j = side == Side::plus ? static_cast<long>(z.core_last) + 1 : static_cast<long>(z.core_first) - 1;
    else
        j = side == Side::plus ? static_cast<long>(z.last) + 1 : static_cast<long>(z.first) - 1;
    const long run_end = side == Side::plus ? static_cast<long>(z.last) : static_cast<long>(z.first);
    for (; j >= 0 && j < n && out.size() < cap; j += dir) {
        const double v = norm[static_cast<std::size_t>(j)];
        const bool inside_run = side == Side::plus ? j <= run_end : j >= run_end;
        if (!inside_run && v <= tol.kappa) break;  // next zero
        if (v < DBL_MIN) break;
        const bool usable = z.long_run ? v >= DBL_MIN : v > 10.0 * tol.kappa;
        if (usable) out.push_back(static_cast<std::size_t>(j));
    }
    return out;
}

// Values at distances 2^m from the target, far to near: eliminate the linear and quadratic
// terms of a smooth approach, then the same Cauchy check on the last three estimates.
std::optional<double> richardson_limit(const std::vector<double>& vals, double tol) {
    if (vals.size() < 5) return std::nullopt;
    std::vector<double> e1, e2;
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) e1.push_back(2.0 * vals[k + 1] - vals[k]);
    for (std::size_t k = 0; k + 1 < e1.size(); ++k) e2.push_back((4.0 * e1[k + 1] - e1[k]) / 3.0);
    const std::size_t m = e2.size();
    if (std::abs(e2[m - 1] - e2[m - 2]) > tol || std::abs(e2[m - 2] - e2[m - 3]) > tol) return std::nullopt;
    return e2[m - 1];
}

// The values live on R / pi Z: unwrap them onto the branch of the nearest one, extrapolate,
// fold the limit back into (-pi/2, pi/2].
std::optional<double> folded_limit(std::vector<double> vals, double tol) {
    for (std::size_t k = vals.size(); k-- > 1;)
        vals[k - 1] = vals[k] + std::remainder(vals[k - 1] - vals[k], kPi);
    auto lim = sequence_limit(vals, tol);
    if (!lim) lim = richardson_limit(vals, tol);
    if (!lim) return std::nullopt;
    double v = std::remainder(*lim, kPi);
    if (v <= -kPi / 2) v += kPi;
    return v;
}

// Samples at distance 1, 2, 4, ..., 256 from the anchor that are usable, far to near. Both
// sides share the anchor so their extrapolations aim at the same point.
std::vector<std::size_t> dyadic(const std::vector<std::size_t>& near_first, std::size_t anchor) {
    std::vector<std::size_t> picks;
    for (std::size_t m = kLevels; m-- > 0;) {
        const std::size_t offset = std::size_t{1} << m;
        for (std::size_t j : near_first) {
            const std::size_t d = j > anchor ? j - anchor : anchor - j;
            if (d == offset) picks.push_back(j);
            if (d >= offset) break;
        }
    }
    return picks;
}

}  // namespace

double theta_hat(double x, double y) {
    if (x == 0.0 && y == 0.0) throw DomainError("theta_hat is undefined at the origin");
    double phi = std::atan2(y, x);
    if (phi > kPi / 2) phi -= kPi;
    else if (phi <= -kPi / 2) phi += kPi;
    return phi;
}

Vec2 rotate_eighth(const Vec2& p) {
    const double c = std::numbers::sqrt2 / 2.0;
    return {c * (p.x() - p.y()), c * (p.x() + p.y())};
}

std::string_view to_string(CaseTag c) {
    switch (c) {
        case CaseTag::case1: return "case1";
        case CaseTag::case2: return "case2";
        case CaseTag::case3: return "case3";
        case CaseTag::undefined: return "undefined";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::liftable: return "liftable";
        case Verdict::not_liftable: return "not_liftable";
        case Verdict::unsupported: return "unsupported";
        case Verdict::under_resolved: return "under_resolved";
    }
    return "?";
}

std::vector<ZeroRecord> find_zeros(const NormalDevelopment& nd, const LiftTolerances& tol) {
    const std::vector<double> norm = norms_of(nd);
    const std::size_t n = norm.size();
    std::vector<ZeroRecord> out;
    std::vector<bool> in_run(n, false);

    for (std::size_t i = 0; i < n;) {
        if (norm[i] > tol.kappa) {
            ++i;
            continue;
        }
        ZeroRecord z;
        z.first = i;
        while (i < n && norm[i] <= tol.kappa) in_run[i++] = true;
        z.last = i - 1;
        z.at_boundary = z.first == 0 || z.last == n - 1;

        std::size_t best_len = 0;
        for (std::size_t a = z.first; a <= z.last;) {
            if (norm[a] >= DBL_MIN) {
                ++a;
                continue;
            }
            std::size_t b = a;
            while (b + 1 <= z.last && norm[b + 1] < DBL_MIN) ++b;
            if (b - a + 1 > best_len) {
                best_len = b - a + 1;
                z.core_first = a;
                z.core_last = b;
            }
            a = b + 1;
        }

        auto flanked = [&](bool left) {
            if (left) {
                if (z.first == 0) return true;
                const std::size_t lo = z.first > kFlankWindow ? z.first - kFlankWindow : 0;
                for (std::size_t j = lo; j < z.first; ++j)
                    if (norm[j] > 10.0 * tol.kappa) return true;
                return false;
            }
            if (z.last == n - 1) return true;
            const std::size_t hi = std::min(n - 1, z.last + kFlankWindow);
            for (std::size_t j = z.last + 1; j <= hi; ++j)
                if (norm[j] > 10.0 * tol.kappa) return true;
            return false;
        };
        const bool whole = z.first == 0 && z.last == n - 1;
        const bool is_flanked = !whole && flanked(true) && flanked(false);

        const std::size_t core_len = z.has_core() ? z.core_last - z.core_first + 1 : 0;
        bool underflow_bordered = false;
        if (core_len > 0) {
            const bool left = z.core_first == 0 || norm[z.core_first - 1] < kUnderflowBorder;
            const bool right = z.core_last == n - 1 || norm[z.core_last + 1] < kUnderflowBorder;
            underflow_bordered = left && right;
        }
        z.long_run = z.length() > tol.max_zero_run;
        z.isolated = is_flanked && (!z.long_run || (core_len > 0 && (core_len <= tol.max_zero_run ||
                                                                       underflow_bordered)));
        if (z.has_core()) {
            z.center = (z.core_first + z.core_last) / 2;
            z.s0 = 0.5 * (nd.s[z.core_first] + nd.s[z.core_last]);
        } else {
            z.center = z.first;
            for (std::size_t j = z.first; j <= z.last; ++j)
                if (norm[j] < norm[z.center]) z.center = j;
            z.s0 = nd.s[z.center];
        }
        out.push_back(z);
    }

    // Sign reversals between consecutive samples away from any run.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (in_run[i] || in_run[i + 1]) continue;
        if (turn(nd.k[i], nd.k[i + 1]) < 5.0 * kPi / 8.0) continue;
        ZeroRecord z;
        z.first = i;
        z.last = i + 1;
        z.center = i;
        z.between_samples = true;
        z.isolated = true;
        const Vec2 d = nd.k[i + 1] - nd.k[i];
        const double u = std::clamp(-nd.k[i].dot(d) / d.squaredNorm(), 0.0, 1.0);
        z.s0 = nd.s[i] + u * (nd.s[i + 1] - nd.s[i]);
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.first < b.first; });
    return out;
}

OneSidedLimits one_sided_limits(const NormalDevelopment& nd, const ZeroRecord& zero, Side side,
                                const LiftTolerances& tol) {
    OneSidedLimits lim;
    const std::vector<double> norm = norms_of(nd);
    const std::vector<std::size_t> near =
        side_samples(norm, zero, side, tol, (std::size_t{1} << (kLevels - 1)) + zero.length());
    if (near.empty()) return lim;

    if (zero.between_samples) {
        const Vec2 p = nd.k[near.front()];
        lim.theta_hat = theta_hat(p.x(), p.y());
        const Vec2 q = rotate_eighth(p);
        lim.theta_hat_rot = theta_hat(q.x(), q.y());
        return lim;
    }

    // Long runs are measured from the edge of their core, short ones from the zero sample.
    std::size_t anchor = zero.center;
    if (zero.long_run) anchor = side == Side::plus ? near.front() - 1 : near.front() + 1;
    const std::vector<std::size_t> picks = dyadic(near, anchor);
    std::vector<double> plain, rotated;
    for (std::size_t j : picks) {
        const Vec2 p = nd.k[j];
        plain.push_back(theta_hat(p.x(), p.y()));
        const Vec2 q = rotate_eighth(p);
        rotated.push_back(theta_hat(q.x(), q.y()));
    }
    lim.theta_hat = folded_limit(plain, tol.limit);
    lim.theta_hat_rot = folded_limit(rotated, tol.limit);

    const std::size_t m = std::min(near.size(), kAxisWindow);
    for (std::size_t a = 0; a + 1 < m; ++a) {
        const Vec2 p = nd.k[near[a]], q = nd.k[near[a + 1]];
        const double floor_p = 1e-12 * p.norm(), floor_q = 1e-12 * q.norm();
        if ((p.y() > floor_p && q.y() < -floor_q) || (p.y() < -floor_p && q.y() > floor_q))
            lim.crosses_k1_axis = true;
        if ((p.x() > floor_p && q.x() < -floor_q) || (p.x() < -floor_p && q.x() > floor_q))
            lim.crosses_k2_axis = true;
    }
    return lim;
}

ResolvedTheta resolve_theta(const OneSidedLimits& lim, double tol_limit) {
    if (lim.theta_hat && std::abs(*lim.theta_hat) < kPi / 2 - tol_limit) return {lim.theta_hat, CaseTag::case1};
    if (lim.theta_hat_rot && std::abs(*lim.theta_hat_rot + kPi / 4) <= tol_limit)
        return {kPi / 2, lim.theta_hat ? CaseTag::case2 : CaseTag::case3};
    return {std::nullopt, CaseTag::undefined};
}

ZeroAnalysis analyze_zero(const NormalDevelopment& nd, const ZeroRecord& zero, const LiftTolerances& tol) {
    ZeroAnalysis a;
    a.zero = zero;
    if (!zero.isolated) return a;
    a.plus = one_sided_limits(nd, zero, Side::plus, tol);
    a.minus = one_sided_limits(nd, zero, Side::minus, tol);
    a.theta_plus = resolve_theta(a.plus, tol.limit);
    a.theta_minus = resolve_theta(a.minus, tol.limit);
    if (a.theta_plus.theta && a.theta_minus.theta) {
        a.mismatch = fold_distance(*a.theta_plus.theta, *a.theta_minus.theta);

        const std::vector<double> norm = norms_of(nd);
        const auto near_plus = side_samples(norm, zero, Side::plus, tol, 1);
        const auto near_minus = side_samples(norm, zero, Side::minus, tol, 1);
        if (!near_plus.empty() && !near_minus.empty()) {
            auto direction = [&](double theta, std::size_t j, bool& grazing) {
                const Vec2 p = nd.k[j].normalized();
                const double c = p.dot(unit(theta));
                if (std::abs(c) < std::sin(tol.limit)) grazing = true;
                return c < 0.0 ? theta + kPi : theta;
            };
            bool grazing = false;
            const double dp = direction(*a.theta_plus.theta, near_plus.front(), grazing);
            const double dm = direction(*a.theta_minus.theta, near_minus.front(), grazing);
            a.j_offset = wrap_pi(dp - dm);
            a.tie_break = grazing;
        }
    }
    return a;
}

PolarLift build_lift(const NormalDevelopment& nd, const std::vector<ZeroAnalysis>& analyses,
                     std::optional<std::size_t> base_index, const LiftTolerances& tol) {
    PolarLift lift;
    lift.s = nd.s;
    const std::size_t n = nd.size();
    const std::vector<double> norm = norms_of(nd);

    auto fail = [&](Verdict v, std::string reason, std::optional<std::size_t> zi, double s,
                    std::optional<double> mismatch = std::nullopt) {
        lift.verdict = v;
        lift.failure = LiftFailure{std::move(reason), zi, s, mismatch};
        lift.r_tilde.clear();
        lift.theta_tilde.clear();
        return lift;
    };

    for (std::size_t zi = 0; zi < analyses.size(); ++zi) {
        const ZeroAnalysis& a = analyses[zi];
        const ZeroRecord& z = a.zero;
        if (!z.isolated) return fail(Verdict::unsupported, "non-isolated zero", zi, z.s0);
        if (z.between_samples) continue;
        const bool need_minus = z.first != 0;
        const bool need_plus = z.last != n - 1;
        auto absent_reason = [](const OneSidedLimits& l, const char* side) {
            if (!l.theta_hat && !l.theta_hat_rot && l.crosses_k1_axis && l.crosses_k2_axis)
                return std::string("oscillation across both axes");
            return std::string("theta_") + side + " absent";
        };
        if (need_plus && !a.theta_plus.theta)
            return fail(Verdict::not_liftable, absent_reason(a.plus, "plus"), zi, z.s0);
        if (need_minus && !a.theta_minus.theta)
            return fail(Verdict::not_liftable, absent_reason(a.minus, "minus"), zi, z.s0);
        if (a.mismatch && *a.mismatch > tol.limit)
            return fail(Verdict::not_liftable, "mismatch", zi, z.s0, a.mismatch);
    }

    // Samples whose direction comes from the limits rather than from the data.
    std::vector<long> zone(n, -1);
    for (std::size_t zi = 0; zi < analyses.size(); ++zi) {
        const ZeroRecord& z = analyses[zi].zero;
        if (z.between_samples) continue;
        std::size_t a = z.first, b = z.last;
        if (z.long_run) {
            a = z.core_first;
            b = z.core_last;
        }
        for (std::size_t j = a; j <= b && j < n; ++j) zone[j] = static_cast<long>(zi);
    }

    std::size_t base = n;
    if (base_index) {
        base = *base_index;
        if (base >= n || zone[base] >= 0 || norm[base] <= tol.kappa)
            return fail(Verdict::unsupported, "base point on a zero", std::nullopt, base < n ? nd.s[base] : 0.0);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            if (norm[i] > tol.kappa && zone[i] < 0) {
                base = i;
                break;
            }
        if (base == n) return fail(Verdict::unsupported, "non-isolated zero", std::nullopt, nd.s.front());
    }
    lift.base_index = base;
    lift.r_tilde.assign(n, 0.0);
    lift.theta_tilde.assign(n, 0.0);
    lift.theta_tilde[base] = base_index ? 0.0 : theta_hat(nd.k[base].x(), nd.k[base].y());
    lift.r_tilde[base] = nd.k[base].dot(unit(lift.theta_tilde[base]));

    std::optional<std::size_t> ambiguous;
    auto step = [&](std::size_t prev, std::size_t cur) {
        const double ref = lift.theta_tilde[prev];
        double th;
        if (zone[cur] >= 0) {
            const ZeroAnalysis& a = analyses[static_cast<std::size_t>(zone[cur])];
            const bool forward = cur > prev;
            std::optional<double> side = forward ? a.theta_minus.theta : a.theta_plus.theta;
            if (!side) side = forward ? a.theta_plus.theta : a.theta_minus.theta;
            th = side ? nearest_branch(*side, ref) : ref;
        } else {
            const Vec2 p = nd.k[cur];
            if (p.x() == 0.0 && p.y() == 0.0) {
                th = ref;
            } else {
                if (zone[prev] < 0 && norm[prev] > 0.0) {
                    const double c = turn(nd.k[prev], p);
                    if (c > 3.0 * kPi / 8.0 && c < 5.0 * kPi / 8.0 && !ambiguous) ambiguous = std::min(prev, cur);
                }
                th = nearest_branch(theta_hat(p.x(), p.y()), ref);
            }
        }
        lift.theta_tilde[cur] = th;
        lift.r_tilde[cur] = nd.k[cur].dot(unit(th));
    };
    for (std::size_t i = base + 1; i < n; ++i) step(i - 1, i);
    for (std::size_t i = base; i-- > 0;) step(i + 1, i);

    if (ambiguous) return fail(Verdict::under_resolved, "grid under-resolved", std::nullopt, nd.s[*ambiguous]);

    for (std::size_t i = 0; i + 1 < n; ++i)
        lift.max_step = std::max(lift.max_step, std::abs(lift.theta_tilde[i + 1] - lift.theta_tilde[i]));
    lift.verdict = Verdict::liftable;
    return lift;
}

OneSidedDerivatives c1_at(const PolarLift& lift, const ZeroAnalysis& a, const LiftTolerances& tol) {
    OneSidedDerivatives d;
    const ZeroRecord& z = a.zero;
    if (z.between_samples) {
        d.c1 = true;
        return d;
    }
    const std::size_t n = lift.s.size();
    const std::size_t lo = z.long_run && z.has_core() ? z.core_first : z.first;
    const std::size_t hi = z.long_run && z.has_core() ? z.core_last : z.last;
    auto usable = [&](std::size_t j) {
        const double r = std::abs(lift.r_tilde[j]);
        return z.long_run ? r >= DBL_MIN : r > 10.0 * tol.kappa;
    };
    // Limit of theta_tilde' from one side: quotients over [edge + d, edge + 2d] for dyadic d.
    // Together with continuity, equal one-sided limits give differentiability at the zero.
    auto side = [&](bool plus) -> std::optional<double> {
        std::vector<double> vals;
        for (std::size_t m = kLevels - 1; m-- > 0;) {
            const std::size_t off = std::size_t{1} << m;
            std::size_t j1, j2;
            if (plus) {
                if (hi + 2 * off >= n) continue;
                j1 = hi + off;
                j2 = hi + 2 * off;
            } else {
                if (lo < 2 * off) continue;
                j1 = lo - off;
                j2 = lo - 2 * off;
            }
            if (!usable(j1) || !usable(j2)) continue;
            vals.push_back((lift.theta_tilde[j2] - lift.theta_tilde[j1]) / (lift.s[j2] - lift.s[j1]));
        }
        auto lim = sequence_limit(vals, tol.c1);
        if (!lim) lim = richardson_limit(vals, tol.c1);
        return lim;
    };
    d.plus = side(true);
    d.minus = side(false);
    if (z.first == 0) d.c1 = d.plus.has_value();
    else if (z.last == n - 1) d.c1 = d.minus.has_value();
    else d.c1 = d.plus && d.minus && std::abs(*d.plus - *d.minus) <= tol.c1;
    return d;
}

std::vector<bool> c1_check(const PolarLift& lift, const std::vector<ZeroAnalysis>& analyses,
                           const LiftTolerances& tol) {
    std::vector<bool> out;
    if (!lift.liftable()) return out;
    for (const auto& a : analyses) out.push_back(c1_at(lift, a, tol).c1);
    return out;
}

LiftResult lift_development(const NormalDevelopment& nd, std::optional<std::size_t> base_index,
                            const LiftTolerances& tol) {
    LiftResult res;
    for (const auto& z : find_zeros(nd, tol)) res.analyses.push_back(analyze_zero(nd, z, tol));
    res.lift = build_lift(nd, res.analyses, base_index, tol);
    res.lift.c1_flags = c1_check(res.lift, res.analyses, tol);
    return res;
}

}  // namespace framecast
