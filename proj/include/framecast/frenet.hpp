#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framecast/curve.hpp"

namespace framecast {

constexpr double kTolKappa = 1e-7;
constexpr double kTolPlanar = 1e-8;

struct FrenetSample {
    double s = 0.0;
    Vec3 T = Vec3::Zero();
    double kappa_f = 0.0;
    std::optional<Vec3> N_f;
    std::optional<Vec3> B_f;
    std::optional<double> tau_f;
};

FrenetSample frenet_from_jet(const CurveJet& j, double tol_kappa = kTolKappa);
// Throws DomainError when s is outside the grid range.
FrenetSample frenet_at(const ArcLengthCurve& curve, double s, double tol_kappa = kTolKappa);
std::vector<FrenetSample> frenet_field(const ArcLengthCurve& curve, double tol_kappa = kTolKappa);

// Best-fit plane. {e1, e2, normal} is a right-handed orthonormal basis.
struct Plane {
    Vec3 origin = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ();
    Vec3 e1 = Vec3::UnitX();
    Vec3 e2 = Vec3::UnitY();
    double max_distance = 0.0;

    Vec2 project(const Vec3& v) const { return {v.dot(e1), v.dot(e2)}; }
};

// Absent when some grid point is farther than tol_planar * length from the fitted plane.
// The normal is oriented with a positive z component (then y, then x) when possible.
std::optional<Plane> is_planar(const ArcLengthCurve& curve, double tol_planar = kTolPlanar);

struct PlanarSample {
    double s = 0.0;
    Vec2 T = Vec2::Zero();
    Vec2 N_good = Vec2::Zero();
    double kappa_signed = 0.0;
};

// N_good is T turned by +pi/2 in the plane's orientation.
PlanarSample planar_sample(const CurveJet& j, const Plane& plane);
Vec3 embed(const Plane& plane, const Vec2& v);
// Throws NotPlanarError if the curve is not planar within tol_planar.
PlanarSample planar_frame_at(const ArcLengthCurve& curve, double s, double tol_planar = kTolPlanar);
std::vector<PlanarSample> planar_field(const ArcLengthCurve& curve, const Plane& plane);

// Max residuals of T' = kappa N and B' = -tau N with central differences over the grid,
// restricted to stencils where the Frenet frame exists.
struct FrenetResiduals {
    double h = 0.0;
    double tangent = 0.0;
    double binormal = 0.0;
    std::size_t samples = 0;
};

FrenetResiduals frenet_residuals(const std::vector<FrenetSample>& field);

}  // namespace framecast
