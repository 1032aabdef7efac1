#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framecast/errors.hpp"
#include "framecast/lift.hpp"

namespace framecast {

struct BetaSample {
    Vec3 T = Vec3::UnitX();
    Vec3 N = Vec3::UnitY();
    Vec3 B = Vec3::UnitZ();
    double kappa = 0.0;
    std::optional<double> tau;
};

struct BetaField {
    std::vector<double> grid;
    std::vector<BetaSample> samples;
    std::size_t base_index = 0;
};

class NoBetaFrameError : public Error {
public:
    NoBetaFrameError(Verdict verdict, std::optional<LiftFailure> failure);
    Verdict verdict() const { return verdict_; }
    const std::optional<LiftFailure>& failure() const { return failure_; }

private:
    Verdict verdict_;
    std::optional<LiftFailure> failure_;
};

// d theta_tilde / ds by three-point differences; absent on the zero samples where the lift is
// not differentiable.
std::vector<std::optional<double>> differentiate_lift(const PolarLift& lift,
                                                      const std::vector<ZeroAnalysis>& analyses);

// Throws NoBetaFrameError unless the lift is liftable; lift and field must share the grid.
BetaField assemble(const BishopField& field, const PolarLift& lift, const std::vector<ZeroAnalysis>& analyses);

// Max residuals of T' = k N, N' = -k T + tau B, B' = -tau N with central differences,
// skipping stencils that touch an absent tau.
struct BetaResiduals {
    double h = 0.0;
    double tangent = 0.0;
    double normal = 0.0;
    double binormal = 0.0;
    std::size_t samples = 0;

    double max() const;
};

BetaResiduals frenet_residuals(const BetaField& beta);

}  // namespace framecast
