#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "framecast/curve.hpp"

namespace framecast::test {

// Fixed-seed generator so failures reproduce.
inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline Vec3 random_unit() {
    Vec3 v;
    do v = Vec3(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    while (v.norm() < 0.1 || v.norm() > 1.0);
    return v.normalized();
}

// k-th derivative of f at x by central differences (k <= 3).
inline double fd(const std::function<double(double)>& f, double x, int k, double h = 1e-3) {
    switch (k) {
        case 0: return f(x);
        case 1: return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
        case 2: return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
        default:
            return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) /
                   (8 * h * h * h);
    }
}

}  // namespace framecast::test
