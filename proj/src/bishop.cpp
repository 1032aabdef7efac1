#include "framecast/bishop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "framecast/errors.hpp"

namespace framecast {

namespace {

// M1 made orthogonal to T and unit; M2 completes the right-handed frame.
void reproject(const Vec3& T, Vec3& M1, Vec3& M2) {
    M1 = (M1 - M1.dot(T) * T).normalized();
    M2 = T.cross(M1);
}

double drift(const Vec3& T, const Vec3& M1, const Vec3& M2) {
    return std::max({std::abs(M1.dot(T)), std::abs(M2.dot(T)), std::abs(M1.dot(M2)),
                     std::abs(M1.norm() - 1.0), std::abs(M2.norm() - 1.0)});
}

Vec3 rhs(const CurveJet& j, const Vec3& M) { return -j.d2.dot(M) * j.d1; }

// Derivative of tabulated values at node i (three-point, non-uniform).
Vec2 node_derivative(const NormalDevelopment& nd, std::size_t i) {
    const std::size_t n = nd.size();
    if (n < 3) return (nd.k[1] - nd.k[0]) / (nd.s[1] - nd.s[0]);
    std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
    const double x0 = nd.s[c - 1], x1 = nd.s[c], x2 = nd.s[c + 1], x = nd.s[i];
    const double w0 = (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double w1 = (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double w2 = (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return w0 * nd.k[c - 1] + w1 * nd.k[c] + w2 * nd.k[c + 1];
}

// Cubic Lagrange interpolation of the development at s inside [s_i, s_i+1].
Vec2 interpolate(const NormalDevelopment& nd, std::size_t i, double s) {
    const std::size_t n = nd.size();
    if (n < 4) {
        const double u = (s - nd.s[i]) / (nd.s[i + 1] - nd.s[i]);
        return (1 - u) * nd.k[i] + u * nd.k[i + 1];
    }
    std::size_t first = i == 0 ? 0 : i - 1;
    first = std::min(first, n - 4);
    Vec2 acc = Vec2::Zero();
    for (std::size_t a = first; a < first + 4; ++a) {
        double w = 1.0;
        for (std::size_t b = first; b < first + 4; ++b)
            if (b != a) w *= (s - nd.s[b]) / (nd.s[a] - nd.s[b]);
        acc += w * nd.k[a];
    }
    return acc;
}

struct State {
    Vec3 gamma, T, M1, M2;
};

State derivative(const State& y, const Vec2& k) {
    return State{y.T, k.x() * y.M1 + k.y() * y.M2, -k.x() * y.T, -k.y() * y.T};
}

State axpy(const State& y, double a, const State& d) {
    return State{y.gamma + a * d.gamma, y.T + a * d.T, y.M1 + a * d.M1, y.M2 + a * d.M2};
}

}  // namespace

InitialFrame initial_frame(const ArcLengthCurve& curve, double tol_kappa, double tol_planar,
                           std::optional<std::size_t> base) {
    const auto& jets = curve.jets();
    std::size_t b = jets.size();
    if (base) {
        if (*base >= jets.size()) throw std::out_of_range("base index outside the grid");
        if (!(jets[*base].d2.norm() > tol_kappa))
            throw std::invalid_argument("curvature vanishes at the requested base point");
        b = *base;
    } else {
        for (std::size_t i = 0; i < jets.size(); ++i) {
            if (jets[i].d2.norm() > tol_kappa) {
                b = i;
                break;
            }
        }
    }
    if (b == jets.size()) throw NoBasePointError();

    InitialFrame init;
    init.base_index = b;
    const CurveJet& j = jets[b];
    if (const auto plane = is_planar(curve, tol_planar)) {
        init.kind = BaseKind::planar;
        init.M1 = plane->normal.cross(j.d1).normalized();
        init.M2 = j.d1.cross(init.M1);
    } else {
        const FrenetSample f = frenet_from_jet(j, tol_kappa);
        init.kind = BaseKind::nonplanar;
        init.M1 = *f.N_f;
        init.M2 = *f.B_f;
    }
    return init;
}

BishopField transport(const ArcLengthCurve& curve, const InitialFrame& init) {
    const auto& jets = curve.jets();
    const auto& mids = curve.midpoint_jets();
    const std::size_t n = jets.size();
    BishopField field;
    field.grid = curve.grid();
    field.samples.resize(n);
    field.base_index = init.base_index;
    field.base_kind = init.kind;

    Vec3 M1 = init.M1, M2 = init.M2;
    reproject(jets[init.base_index].d1, M1, M2);
    field.samples[init.base_index].M1 = M1;
    field.samples[init.base_index].M2 = M2;

    auto step = [&](std::size_t from, std::size_t to, const CurveJet& mid) {
        const double h = field.grid[to] - field.grid[from];
        const CurveJet& a = jets[from];
        const CurveJet& b = jets[to];
        Vec3 m[2] = {field.samples[from].M1, field.samples[from].M2};
        for (Vec3& M : m) {
            const Vec3 k1 = rhs(a, M);
            const Vec3 k2 = rhs(mid, M + 0.5 * h * k1);
            const Vec3 k3 = rhs(mid, M + 0.5 * h * k2);
            const Vec3 k4 = rhs(b, M + h * k3);
            M += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        field.max_drift = std::max(field.max_drift, drift(b.d1, m[0], m[1]));
        reproject(b.d1, m[0], m[1]);
        field.samples[to].M1 = m[0];
        field.samples[to].M2 = m[1];
    };

    for (std::size_t i = init.base_index; i + 1 < n; ++i) step(i, i + 1, mids[i]);
    for (std::size_t i = init.base_index; i > 0; --i) step(i, i - 1, mids[i - 1]);

    for (std::size_t i = 0; i < n; ++i) {
        BishopSample& bs = field.samples[i];
        bs.T = jets[i].d1;
        bs.k1 = jets[i].d2.dot(bs.M1);
        bs.k2 = jets[i].d2.dot(bs.M2);
    }
    return field;
}

NormalDevelopment normal_development(const BishopField& field) {
    NormalDevelopment nd;
    nd.s = field.grid;
    nd.k.reserve(field.samples.size());
    for (const auto& b : field.samples) nd.k.emplace_back(b.k1, b.k2);
    return nd;
}

CurveSpec reconstruct_spec(const NormalDevelopment& nd, const Seed& seed) {
    const std::size_t n = nd.size();
    if (n < 2) throw std::invalid_argument("development needs at least 2 samples");
    for (const auto& k : nd.k)
        if (!k.allFinite()) throw std::invalid_argument("development has non-finite entries");

    State y{seed.position, seed.T.normalized(), seed.M1, seed.M2};
    reproject(y.T, y.M1, y.M2);

    std::vector<ParamJet> jets(n);
    auto record = [&](std::size_t i) {
        const Vec2 k = nd.k[i];
        const Vec2 dk = node_derivative(nd, i);
        ParamJet& j = jets[i];
        j.pos = y.gamma;
        j.d1 = y.T;
        j.d2 = k.x() * y.M1 + k.y() * y.M2;
        j.d3 = dk.x() * y.M1 + dk.y() * y.M2 - k.squaredNorm() * y.T;
    };
    record(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = nd.s[i + 1] - nd.s[i];
        const Vec2 ka = nd.k[i];
        const Vec2 km = interpolate(nd, i, 0.5 * (nd.s[i] + nd.s[i + 1]));
        const Vec2 kb = nd.k[i + 1];
        const State d1 = derivative(y, ka);
        const State d2 = derivative(axpy(y, 0.5 * h, d1), km);
        const State d3 = derivative(axpy(y, 0.5 * h, d2), km);
        const State d4 = derivative(axpy(y, h, d3), kb);
        y.gamma += h / 6.0 * (d1.gamma + 2.0 * d2.gamma + 2.0 * d3.gamma + d4.gamma);
        y.T += h / 6.0 * (d1.T + 2.0 * d2.T + 2.0 * d3.T + d4.T);
        y.M1 += h / 6.0 * (d1.M1 + 2.0 * d2.M1 + 2.0 * d3.M1 + d4.M1);
        y.M2 += h / 6.0 * (d1.M2 + 2.0 * d2.M2 + 2.0 * d3.M2 + d4.M2);
        y.T.normalize();
        reproject(y.T, y.M1, y.M2);
        record(i + 1);
    }
    return CurveSpec::developed(nd.s, std::move(jets), "reconstructed");
}

ArcLengthCurve reconstruct(const NormalDevelopment& nd, const Seed& seed) {
    return ArcLengthCurve::build(reconstruct_spec(nd, seed));
}

LineFit fit_line(const NormalDevelopment& nd) {
    Vec2 c = Vec2::Zero();
    for (const auto& k : nd.k) c += k;
    c /= static_cast<double>(nd.size());
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto& k : nd.k) cov += (k - c) * (k - c).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
    LineFit fit;
    fit.point = c;
    fit.direction = eig.eigenvectors().col(1).normalized();
    const Vec2 normal(-fit.direction.y(), fit.direction.x());
    for (const auto& k : nd.k) fit.max_deviation = std::max(fit.max_deviation, std::abs((k - c).dot(normal)));
    fit.distance_from_origin = std::abs(c.dot(normal));
    return fit;
}

}  // namespace framecast
