#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framecast/bishop.hpp"

namespace framecast {

struct LiftTolerances {
    double kappa = kTolKappa;
    double limit = 1e-3;
    double c1 = 1e-2;
    std::size_t max_zero_run = 3;
};

// Fold of Arg(x + iy) into (-pi/2, pi/2]. Throws DomainError at the origin.
double theta_hat(double x, double y);
// (x, y) turned by +pi/4.
Vec2 rotate_eighth(const Vec2& p);

// A maximal run of samples with norm <= tol_kappa, or (between_samples) a sign reversal of
// the development between samples first and last = first + 1.
struct ZeroRecord {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t center = 0;
    double s0 = 0.0;
    bool isolated = false;
    bool between_samples = false;
    bool at_boundary = false;
    // Longest stretch inside the run whose norm underflows (< DBL_MIN); empty when
    // core_last < core_first.
    std::size_t core_first = 1;
    std::size_t core_last = 0;
    bool long_run = false;

    std::size_t length() const { return last - first + 1; }
    bool has_core() const { return core_last >= core_first; }
};

std::vector<ZeroRecord> find_zeros(const NormalDevelopment& nd, const LiftTolerances& tol = {});

enum class Side { plus, minus };

struct OneSidedLimits {
    std::optional<double> theta_hat;
    std::optional<double> theta_hat_rot;
    bool crosses_k1_axis = false;
    bool crosses_k2_axis = false;
};

OneSidedLimits one_sided_limits(const NormalDevelopment& nd, const ZeroRecord& zero, Side side,
                                const LiftTolerances& tol = {});

enum class CaseTag { case1, case2, case3, undefined };
std::string_view to_string(CaseTag c);

struct ResolvedTheta {
    std::optional<double> theta;
    CaseTag tag = CaseTag::undefined;
};

ResolvedTheta resolve_theta(const OneSidedLimits& limits, double tol_limit);

struct ZeroAnalysis {
    ZeroRecord zero;
    OneSidedLimits plus, minus;
    ResolvedTheta theta_plus, theta_minus;
    // Distance between theta_plus and theta_minus on R / pi Z.
    std::optional<double> mismatch;
    // Angle between the leaving and the approaching direction, in (-pi, pi].
    double j_offset = 0.0;
    bool tie_break = false;
};

ZeroAnalysis analyze_zero(const NormalDevelopment& nd, const ZeroRecord& zero,
                          const LiftTolerances& tol = {});

enum class Verdict { liftable, not_liftable, unsupported, under_resolved };
std::string_view to_string(Verdict v);

struct LiftFailure {
    std::string reason;
    std::optional<std::size_t> zero_index;
    double s = 0.0;
    std::optional<double> mismatch;
};

struct PolarLift {
    std::vector<double> s;
    std::vector<double> r_tilde;
    std::vector<double> theta_tilde;
    Verdict verdict = Verdict::liftable;
    std::optional<LiftFailure> failure;
    std::size_t base_index = 0;
    // Per analysed zero: theta_tilde differentiable there.
    std::vector<bool> c1_flags;
    double max_step = 0.0;

    bool liftable() const { return verdict == Verdict::liftable; }
};

// With base_index given (a Bishop field's base) theta_tilde(base) = 0; otherwise the base is
// the first sample with norm > tol_kappa and theta_tilde(base) = theta_hat there.
PolarLift build_lift(const NormalDevelopment& nd, const std::vector<ZeroAnalysis>& analyses,
                     std::optional<std::size_t> base_index = std::nullopt,
                     const LiftTolerances& tol = {});

struct OneSidedDerivatives {
    std::optional<double> plus, minus;
    bool c1 = false;
};

OneSidedDerivatives c1_at(const PolarLift& lift, const ZeroAnalysis& zero, const LiftTolerances& tol = {});
std::vector<bool> c1_check(const PolarLift& lift, const std::vector<ZeroAnalysis>& analyses,
                           const LiftTolerances& tol = {});

struct LiftResult {
    std::vector<ZeroAnalysis> analyses;
    PolarLift lift;
};

// find_zeros + analyze_zero + build_lift + c1_check.
LiftResult lift_development(const NormalDevelopment& nd, std::optional<std::size_t> base_index = std::nullopt,
                            const LiftTolerances& tol = {});

}  // namespace framecast
