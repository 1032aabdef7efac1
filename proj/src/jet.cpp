#include "framecast/jet.hpp"

#include <cmath>

#include "framecast/errors.hpp"

namespace framecast {

namespace {

constexpr int kOrder = 3;

bool is_constant(const Jet& a) { return a.c[1] == 0.0 && a.c[2] == 0.0 && a.c[3] == 0.0; }

// Solves f' = a' * g for f, given f0 and the series of g.
Jet integrate_chain(double f0, const Jet& a, const Jet& g) {
    Jet f;
    f.c[0] = f0;
    for (int k = 1; k <= kOrder; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * a.c[i] * g.c[k - i];
        f.c[k] = acc / k;
    }
    return f;
}

// Simultaneous recurrences for (sin, cos) or (sinh, cosh); sign = -1 or +1.
void trig_pair(const Jet& a, double s0, double c0, double sign, Jet& s, Jet& c) {
    s = Jet::constant(s0);
    c = Jet::constant(c0);
    for (int k = 1; k <= kOrder; ++k) {
        double ds = 0.0, dc = 0.0;
        for (int i = 1; i <= k; ++i) {
            ds += i * a.c[i] * c.c[k - i];
            dc += i * a.c[i] * s.c[k - i];
        }
        s.c[k] = ds / k;
        c.c[k] = sign * dc / k;
    }
}

}  // namespace

double Jet::derivative(int k) const {
    static constexpr double factorial[] = {1.0, 1.0, 2.0, 6.0};
    return c.at(static_cast<std::size_t>(k)) * factorial[k];
}

Jet operator-(const Jet& a) {
    return Jet{{-a.c[0], -a.c[1], -a.c[2], -a.c[3]}};
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kOrder; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kOrder; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= kOrder; ++k)
        for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
    return r;
}

Jet operator*(double k, const Jet& a) {
    return Jet{{k * a.c[0], k * a.c[1], k * a.c[2], k * a.c[3]}};
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b.c[0] == 0.0) throw PoleError("division by zero");
    Jet q;
    for (int k = 0; k <= kOrder; ++k) {
        double acc = a.c[k];
        for (int i = 1; i <= k; ++i) acc -= b.c[i] * q.c[k - i];
        q.c[k] = acc / b.c[0];
    }
    return q;
}

Jet exp(const Jet& a) {
    Jet e = Jet::constant(std::exp(a.c[0]));
    for (int k = 1; k <= kOrder; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * a.c[i] * e.c[k - i];
        e.c[k] = acc / k;
    }
    return e;
}

Jet log(const Jet& a) {
    if (!(a.c[0] > 0.0)) throw PoleError("log of non-positive value");
    Jet l = Jet::constant(std::log(a.c[0]));
    for (int k = 1; k <= kOrder; ++k) {
        double acc = 0.0;
        for (int i = 1; i < k; ++i) acc += i * l.c[i] * a.c[k - i];
        l.c[k] = (a.c[k] - acc / k) / a.c[0];
    }
    return l;
}

Jet sqrt(const Jet& a) {
    if (a.c[0] < 0.0) throw PoleError("sqrt of negative value");
    if (a.c[0] == 0.0) {
        if (is_constant(a)) return Jet{};
        throw PoleError("sqrt is not differentiable at 0");
    }
    Jet r = Jet::constant(std::sqrt(a.c[0]));
    for (int k = 1; k <= kOrder; ++k) {
        double acc = a.c[k];
        for (int i = 1; i < k; ++i) acc -= r.c[i] * r.c[k - i];
        r.c[k] = acc / (2.0 * r.c[0]);
    }
    return r;
}

Jet sin(const Jet& a) {
    Jet s, c;
    trig_pair(a, std::sin(a.c[0]), std::cos(a.c[0]), -1.0, s, c);
    return s;
}

Jet cos(const Jet& a) {
    Jet s, c;
    trig_pair(a, std::sin(a.c[0]), std::cos(a.c[0]), -1.0, s, c);
    return c;
}

Jet tan(const Jet& a) {
    Jet s, c;
    trig_pair(a, std::sin(a.c[0]), std::cos(a.c[0]), -1.0, s, c);
    if (std::abs(c.c[0]) < 1e-300) throw PoleError("tan pole");
    return s / c;
}

Jet atan(const Jet& a) {
    const Jet g = Jet::constant(1.0) / (Jet::constant(1.0) + a * a);
    return integrate_chain(std::atan(a.c[0]), a, g);
}

Jet sinh(const Jet& a) {
    Jet s, c;
    trig_pair(a, std::sinh(a.c[0]), std::cosh(a.c[0]), 1.0, s, c);
    return s;
}

Jet cosh(const Jet& a) {
    Jet s, c;
    trig_pair(a, std::sinh(a.c[0]), std::cosh(a.c[0]), 1.0, s, c);
    return c;
}

Jet tanh(const Jet& a) {
    Jet s, c;
    trig_pair(a, std::sinh(a.c[0]), std::cosh(a.c[0]), 1.0, s, c);
    return s / c;
}

Jet abs(const Jet& a) {
    if (a.c[0] > 0.0) return a;
    if (a.c[0] < 0.0) return -a;
    if (is_constant(a)) return Jet{};
    throw PoleError("abs is not differentiable at 0");
}

Jet powi(const Jet& a, long n) {
    if (n < 0) return Jet::constant(1.0) / powi(a, -n);
    Jet result = Jet::constant(1.0);
    Jet base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

Jet pow(const Jet& a, const Jet& b) {
    if (is_constant(b)) {
        const double p = b.c[0];
        if (p == std::floor(p) && std::abs(p) <= 1024.0) return powi(a, static_cast<long>(p));
        if (a.c[0] == 0.0 && is_constant(a) && p > 0.0) return Jet{};
    }
    if (!(a.c[0] > 0.0)) throw PoleError("non-integer power of non-positive base");
    return exp(b * log(a));
}

Jet flat(const Jet& a) {
    // Below u ~ 0.035 every coefficient underflows; 1/u^2 itself may overflow.
    if (!(a.c[0] > 0.0) || a.c[0] * a.c[0] < 1.0 / 800.0) return Jet{};
    return exp(-(Jet::constant(1.0) / (a * a)));
}

}  // namespace framecast
