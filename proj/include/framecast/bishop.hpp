#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framecast/curve.hpp"
#include "framecast/frenet.hpp"

namespace framecast {

enum class BaseKind { planar, nonplanar };

struct InitialFrame {
    std::size_t base_index = 0;
    Vec3 M1 = Vec3::UnitY();
    Vec3 M2 = Vec3::UnitZ();
    BaseKind kind = BaseKind::nonplanar;
};

// Base point: first grid index with kappa_f > tol_kappa, or `base` when given (it must
// satisfy the same condition). Planar curves start from the good normal and the plane
// normal; others from the Frenet normal and binormal. Throws NoBasePointError.
InitialFrame initial_frame(const ArcLengthCurve& curve, double tol_kappa = kTolKappa,
                           double tol_planar = kTolPlanar,
                           std::optional<std::size_t> base = std::nullopt);

struct BishopSample {
    Vec3 T = Vec3::UnitX();
    Vec3 M1 = Vec3::UnitY();
    Vec3 M2 = Vec3::UnitZ();
    double k1 = 0.0;
    double k2 = 0.0;
};

struct BishopField {
    std::vector<double> grid;
    std::vector<BishopSample> samples;
    std::size_t base_index = 0;
    BaseKind base_kind = BaseKind::nonplanar;
    // Largest deviation from orthonormality seen after an integration step, before the
    // frame was re-projected.
    double max_drift = 0.0;
};

// RK4 on M' = -<gamma'', M> T in both directions from the base index.
BishopField transport(const ArcLengthCurve& curve, const InitialFrame& init);

struct NormalDevelopment {
    std::vector<double> s;
    std::vector<Vec2> k;

    std::size_t size() const { return s.size(); }
};

NormalDevelopment normal_development(const BishopField& field);

struct Seed {
    Vec3 position = Vec3::Zero();
    Vec3 T = Vec3::UnitX();
    Vec3 M1 = Vec3::UnitY();
    Vec3 M2 = Vec3::UnitZ();
};

// Integrates gamma' = T, T' = k1 M1 + k2 M2, Mi' = -ki T from the seed at nd.s.front().
// The result is a unit-speed curve whose grid is nd.s.
CurveSpec reconstruct_spec(const NormalDevelopment& nd, const Seed& seed = {});
ArcLengthCurve reconstruct(const NormalDevelopment& nd, const Seed& seed = {});

struct LineFit {
    Vec2 point = Vec2::Zero();
    Vec2 direction = Vec2::UnitX();
    double max_deviation = 0.0;
    double distance_from_origin = 0.0;
};

// Total least squares line through the development points.
LineFit fit_line(const NormalDevelopment& nd);

}  // namespace framecast
