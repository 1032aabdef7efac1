#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framecast/beta.hpp"

namespace framecast {

struct FrameOptions {
    std::size_t samples = 0;  // 0: default density
    LiftTolerances tol;
    double tol_planar = kTolPlanar;
    std::optional<std::size_t> base_index;
    // Sample doublings allowed when the lift reports an under-resolved grid.
    int max_refinements = 3;
};

struct FrameResult {
    ArcLengthCurve curve;
    std::vector<FrenetSample> frenet;
    BishopField bishop;
    NormalDevelopment development;
    LiftResult lift;
    std::optional<BetaField> beta;  // present iff the lift is liftable
};

// curve -> Frenet -> Bishop -> development -> lift -> Beta. Throws NotRegularError and
// NoBasePointError; a failed lift is reported through result.lift.
FrameResult frame_curve(const CurveSpec& spec, const FrameOptions& options = {});

// Lifts a standalone development (no curve, no base normalization to 0).
LiftResult lift_only(const NormalDevelopment& nd, const LiftTolerances& tol = {});

}  // namespace framecast
