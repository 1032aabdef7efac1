#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "framecast/expr.hpp"

namespace framecast {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// Position and derivatives with respect to the curve's own parameter.
struct ParamJet {
    Vec3 pos = Vec3::Zero();
    Vec3 d1 = Vec3::Zero();
    Vec3 d2 = Vec3::Zero();
    Vec3 d3 = Vec3::Zero();
};

enum class CurveKind { analytic, sampled, development_derived };

std::string_view to_string(CurveKind k);

class CurveSpec {
public:
    static CurveSpec analytic(std::array<Expr, 3> coords, double t_min, double t_max,
                              std::string name = {});
    // Natural cubic spline through the points; t strictly increasing, at least 4 points.
    static CurveSpec sampled(std::vector<double> t, std::vector<Vec3> points, std::string name = {});
    // Unit-speed curve known through exact jets at arclength nodes (quintic Hermite between).
    static CurveSpec developed(std::vector<double> s, std::vector<ParamJet> jets,
                               std::string name = {});

    CurveKind kind() const;
    double t_min() const;
    double t_max() const;
    const std::string& name() const;
    // "exact", "natural-cubic-spline" or "quintic-hermite".
    std::string_view interpolation() const;

    std::optional<bool> planar_hint;

    // Throws DomainError outside [t_min, t_max], PoleError at singular points.
    ParamJet eval_jet(double t) const;

    // Parameters where the interpolant switches pieces; {t_min, t_max} for analytic specs.
    std::vector<double> breakpoints() const;
    // Node parameters of a development-derived curve, empty otherwise.
    const std::vector<double>& nodes() const;

    struct Impl;

private:
    explicit CurveSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

CurveSpec parse_curve_spec(std::string_view text);

inline ParamJet eval_jet(const CurveSpec& spec, double t) { return spec.eval_jet(t); }

// Jet with respect to arclength.
struct CurveJet {
    double s = 0.0;
    Vec3 gamma = Vec3::Zero();
    Vec3 d1 = Vec3::Zero();
    Vec3 d2 = Vec3::Zero();
    Vec3 d3 = Vec3::Zero();
};

// Converts parameter derivatives to arclength derivatives (chain rule through t(s)).
CurveJet to_arclength(const ParamJet& pj, double s);

constexpr double kTolSpeed = 1e-9;
constexpr double kTolUnit = 1e-8;

// 2001 samples per unit length, at least 16.
std::size_t default_samples(double length);

class ArcLengthCurve {
public:
    // n_samples == 0 picks default_samples(length); development-derived curves then use
    // their own nodes as the grid.
    static ArcLengthCurve build(const CurveSpec& spec, std::size_t n_samples = 0);

    const CurveSpec& source() const;
    double total_length() const;
    const std::vector<double>& grid() const;
    // Jets at the grid points and at the midpoints of consecutive grid points.
    const std::vector<CurveJet>& jets() const;
    const std::vector<CurveJet>& midpoint_jets() const;
    std::size_t size() const { return grid().size(); }

    double t_of_s(double s) const;
    double s_of_t(double t) const;
    CurveJet jet_at(double s) const;

    struct Impl;

private:
    explicit ArcLengthCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

inline ArcLengthCurve reparametrize_arclength(const CurveSpec& spec, std::size_t n_samples = 0) {
    return ArcLengthCurve::build(spec, n_samples);
}

}  // namespace framecast
