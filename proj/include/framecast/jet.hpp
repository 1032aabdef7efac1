#pragma once

#include <array>

namespace framecast {

// Truncated Taylor series  f(t0 + h) = c0 + c1 h + c2 h^2 + c3 h^3 + O(h^4).
struct Jet {
    std::array<double, 4> c{};

    static Jet constant(double v) { return Jet{{v, 0.0, 0.0, 0.0}}; }
    static Jet variable(double t) { return Jet{{t, 1.0, 0.0, 0.0}}; }

    double value() const { return c[0]; }
    // k-th derivative at t0, k <= 3.
    double derivative(int k) const;
};

Jet operator-(const Jet& a);
Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator*(double k, const Jet& a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet atan(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet abs(const Jet& a);
Jet pow(const Jet& a, const Jet& b);
Jet powi(const Jet& a, long n);
// exp(-1/u^2) for u > 0, identically 0 for u <= 0.
Jet flat(const Jet& a);

}  // namespace framecast
