#include "framecast/frenet.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "framecast/errors.hpp"

namespace framecast {

FrenetSample frenet_from_jet(const CurveJet& j, double tol_kappa) {
    FrenetSample f;
    f.s = j.s;
    f.T = j.d1;
    f.kappa_f = j.d2.norm();
    if (f.kappa_f > tol_kappa) {
        const Vec3 n = j.d2 / f.kappa_f;
        f.N_f = n;
        f.B_f = j.d1.cross(n);
        f.tau_f = j.d1.cross(j.d2).dot(j.d3) / (f.kappa_f * f.kappa_f);
    }
    return f;
}

FrenetSample frenet_at(const ArcLengthCurve& curve, double s, double tol_kappa) {
    const auto& g = curve.grid();
    if (!(s >= g.front() && s <= g.back())) throw DomainError("arclength outside the grid range");
    return frenet_from_jet(curve.jet_at(s), tol_kappa);
}

std::vector<FrenetSample> frenet_field(const ArcLengthCurve& curve, double tol_kappa) {
    std::vector<FrenetSample> out;
    out.reserve(curve.size());
    for (const auto& j : curve.jets()) out.push_back(frenet_from_jet(j, tol_kappa));
    return out;
}

std::optional<Plane> is_planar(const ArcLengthCurve& curve, double tol_planar) {
    const auto& jets = curve.jets();
    Vec3 centroid = Vec3::Zero();
    for (const auto& j : jets) centroid += j.gamma;
    centroid /= static_cast<double>(jets.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& j : jets) {
        const Vec3 d = j.gamma - centroid;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Vec3 n = eig.eigenvectors().col(0).normalized();

    double max_dist = 0.0;
    for (const auto& j : jets) max_dist = std::max(max_dist, std::abs((j.gamma - centroid).dot(n)));
    if (max_dist > tol_planar * curve.total_length()) return std::nullopt;

    constexpr double eps = 1e-12;
    const double sign = std::abs(n.z()) > eps ? n.z() : std::abs(n.y()) > eps ? n.y() : n.x();
    if (sign < 0.0) n = -n;

    Plane p;
    p.origin = centroid;
    p.normal = n;
    Vec3 seed = Vec3::UnitX() - n.x() * n;
    if (seed.norm() < 1e-6) seed = Vec3::UnitY() - n.y() * n;
    p.e1 = seed.normalized();
    p.e2 = n.cross(p.e1);
    p.max_distance = max_dist;
    return p;
}

Vec3 embed(const Plane& plane, const Vec2& v) { return v.x() * plane.e1 + v.y() * plane.e2; }

PlanarSample planar_sample(const CurveJet& j, const Plane& plane) {
    PlanarSample p;
    p.s = j.s;
    p.T = plane.project(j.d1).normalized();
    p.N_good = Vec2(-p.T.y(), p.T.x());
    p.kappa_signed = j.d2.dot(embed(plane, p.N_good));
    return p;
}

PlanarSample planar_frame_at(const ArcLengthCurve& curve, double s, double tol_planar) {
    const auto plane = is_planar(curve, tol_planar);
    if (!plane) throw NotPlanarError("curve is not planar within tolerance");
    const auto& g = curve.grid();
    if (!(s >= g.front() && s <= g.back())) throw DomainError("arclength outside the grid range");
    return planar_sample(curve.jet_at(s), *plane);
}

std::vector<PlanarSample> planar_field(const ArcLengthCurve& curve, const Plane& plane) {
    std::vector<PlanarSample> out;
    out.reserve(curve.size());
    for (const auto& j : curve.jets()) out.push_back(planar_sample(j, plane));
    return out;
}

FrenetResiduals frenet_residuals(const std::vector<FrenetSample>& f) {
    FrenetResiduals r;
    if (f.size() > 1) r.h = f[1].s - f[0].s;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        if (!f[i - 1].N_f || !f[i].N_f || !f[i + 1].N_f) continue;
        const double ds = f[i + 1].s - f[i - 1].s;
        const Vec3 dT = (f[i + 1].T - f[i - 1].T) / ds;
        const Vec3 dB = (*f[i + 1].B_f - *f[i - 1].B_f) / ds;
        r.tangent = std::max(r.tangent, (dT - f[i].kappa_f * *f[i].N_f).norm());
        r.binormal = std::max(r.binormal, (dB + *f[i].tau_f * *f[i].N_f).norm());
        ++r.samples;
    }
    return r;
}

}  // namespace framecast
