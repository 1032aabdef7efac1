#include "framecast/pipeline.hpp"

namespace framecast {

namespace {

FrameResult run_once(const CurveSpec& spec, std::size_t samples, const FrameOptions& o,
                     std::optional<std::size_t> base) {
    ArcLengthCurve curve = ArcLengthCurve::build(spec, samples);
    std::vector<FrenetSample> frenet = frenet_field(curve, o.tol.kappa);
    const InitialFrame init = initial_frame(curve, o.tol.kappa, o.tol_planar, base);
    BishopField bishop = transport(curve, init);
    NormalDevelopment nd = normal_development(bishop);
    LiftResult lift = lift_development(nd, bishop.base_index, o.tol);
    std::optional<BetaField> beta;
    if (lift.lift.liftable()) beta = assemble(bishop, lift.lift, lift.analyses);
    return FrameResult{std::move(curve), std::move(frenet), std::move(bishop), std::move(nd),
                       std::move(lift), std::move(beta)};
}

}  // namespace

FrameResult frame_curve(const CurveSpec& spec, const FrameOptions& o) {
    std::size_t samples = o.samples;
    std::optional<std::size_t> base = o.base_index;
    FrameResult r = run_once(spec, samples, o, base);
    for (int k = 0; k < o.max_refinements && r.lift.lift.verdict == Verdict::under_resolved; ++k) {
        const std::size_t n = r.curve.size();
        samples = 2 * (n - 1) + 1;
        if (base) base = 2 * *base;
        r = run_once(spec, samples, o, base);
    }
    return r;
}

LiftResult lift_only(const NormalDevelopment& nd, const LiftTolerances& tol) {
    return lift_development(nd, std::nullopt, tol);
}

}  // namespace framecast
