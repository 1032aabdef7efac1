#include "framecast/beta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace framecast {

namespace {

std::string describe(Verdict v, const std::optional<LiftFailure>& f) {
    std::string msg = "no beta frame: lift is " + std::string(to_string(v));
    if (f) msg += " (" + f->reason + " at s = " + std::to_string(f->s) + ")";
    return msg;
}

}  // namespace

NoBetaFrameError::NoBetaFrameError(Verdict verdict, std::optional<LiftFailure> failure)
    : Error(describe(verdict, failure)), verdict_(verdict), failure_(std::move(failure)) {}

std::vector<std::optional<double>> differentiate_lift(const PolarLift& lift,
                                                      const std::vector<ZeroAnalysis>& analyses) {
    const auto& s = lift.s;
    const auto& th = lift.theta_tilde;
    const std::size_t n = th.size();
    std::vector<std::optional<double>> tau(n);
    if (n < 3) {
        if (n == 2) tau[0] = tau[1] = (th[1] - th[0]) / (s[1] - s[0]);
        return tau;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
        // Offsets from the centre node; absolute abscissae cancel badly far from s = 0.
        const double d0 = s[c - 1] - s[c], d2 = s[c + 1] - s[c], x = s[i] - s[c];
        const double w0 = (2 * x - d2) / (d0 * (d0 - d2));
        const double w2 = (2 * x - d0) / (d2 * (d2 - d0));
        tau[i] = w0 * (th[c - 1] - th[c]) + w2 * (th[c + 1] - th[c]);
    }
    for (std::size_t zi = 0; zi < analyses.size() && zi < lift.c1_flags.size(); ++zi) {
        if (lift.c1_flags[zi]) continue;
        const ZeroRecord& z = analyses[zi].zero;
        if (z.between_samples) continue;
        std::size_t a = z.first, b = z.last;
        if (z.long_run && z.has_core()) {
            a = z.core_first;
            b = z.core_last;
        }
        for (std::size_t j = a; j <= b && j < n; ++j) tau[j].reset();
    }
    return tau;
}

BetaField assemble(const BishopField& field, const PolarLift& lift, const std::vector<ZeroAnalysis>& analyses) {
    if (!lift.liftable()) throw NoBetaFrameError(lift.verdict, lift.failure);
    if (lift.s.size() != field.samples.size()) throw std::invalid_argument("lift and field grids differ");
    const auto tau = differentiate_lift(lift, analyses);
    BetaField beta;
    beta.grid = field.grid;
    beta.base_index = field.base_index;
    beta.samples.resize(field.samples.size());
    for (std::size_t i = 0; i < field.samples.size(); ++i) {
        const BishopSample& b = field.samples[i];
        const double c = std::cos(lift.theta_tilde[i]), s = std::sin(lift.theta_tilde[i]);
        BetaSample& out = beta.samples[i];
        out.T = b.T;
        out.N = c * b.M1 + s * b.M2;
        out.B = -s * b.M1 + c * b.M2;
        out.kappa = lift.r_tilde[i];
        out.tau = tau[i];
    }
    return beta;
}

double BetaResiduals::max() const { return std::max({tangent, normal, binormal}); }

BetaResiduals frenet_residuals(const BetaField& beta) {
    BetaResiduals r;
    const auto& f = beta.samples;
    const auto& s = beta.grid;
    if (s.size() > 1) r.h = s[1] - s[0];
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        if (!f[i - 1].tau || !f[i].tau || !f[i + 1].tau) continue;
        const double ds = s[i + 1] - s[i - 1];
        const Vec3 dT = (f[i + 1].T - f[i - 1].T) / ds;
        const Vec3 dN = (f[i + 1].N - f[i - 1].N) / ds;
        const Vec3 dB = (f[i + 1].B - f[i - 1].B) / ds;
        const double k = f[i].kappa, t = *f[i].tau;
        r.tangent = std::max(r.tangent, (dT - k * f[i].N).norm());
        r.normal = std::max(r.normal, (dN + k * f[i].T - t * f[i].B).norm());
        r.binormal = std::max(r.binormal, (dB + t * f[i].N).norm());
        ++r.samples;
    }
    return r;
}

}  // namespace framecast
