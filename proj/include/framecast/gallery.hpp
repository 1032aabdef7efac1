#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "framecast/lift.hpp"

namespace framecast {

// Where an expected value comes from.
enum class Basis {
    published_example,   // stated for this example in the literature
    independent_oracle,  // computed by an independent method (closed form, finite differences)
    direct,              // immediate from the definitions
};

std::string_view to_string(Basis b);

struct Expectation {
    Basis basis = Basis::direct;
    std::optional<Verdict> verdict;
    std::optional<std::string> reason;
    bool no_base_point = false;
    std::optional<bool> planar;
    std::optional<double> length;
    std::optional<double> kappa;         // constant |kappa|
    std::optional<double> kappa_signed;  // constant signed curvature (planar)
    std::optional<double> tau;           // constant torsion
    std::optional<std::size_t> zeros;    // sampled curvature zeros
    // At the zero nearest to the middle of the grid.
    std::optional<double> theta_plus, theta_minus, mismatch;
    std::optional<bool> c1;
    // Spherical curves: development on a line at this distance from the origin.
    std::optional<double> line_distance;
};

struct GalleryEntry {
    std::string name;
    std::string description;
    std::variant<CurveSpec, NormalDevelopment> payload;
    Expectation expected;
    std::size_t samples = 0;  // preferred grid size, 0 for the default density

    bool is_curve() const { return std::holds_alternative<CurveSpec>(payload); }
    const CurveSpec& curve() const { return std::get<CurveSpec>(payload); }
    const NormalDevelopment& development() const { return std::get<NormalDevelopment>(payload); }
};

const std::vector<GalleryEntry>& gallery();
// Throws std::out_of_range for unknown names.
const GalleryEntry& gallery_entry(std::string_view name);

// Samples (r(s) cos theta(s), r(s) sin theta(s)) at n points on [-1, 1]; s = 0 maps to (0, 0).
NormalDevelopment synthetic_development(const std::function<double(double)>& r,
                                        const std::function<double(double)>& theta, std::size_t n = 4001);

// One line per entry: name, kind, expectation summary.
std::string summary(const GalleryEntry& e);

}  // namespace framecast
