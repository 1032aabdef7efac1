#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "framecast/jet.hpp"

namespace framecast {

enum class Func { sin, cos, tan, exp, log, sqrt, abs, atan, sinh, cosh, tanh, flat };

// Immutable expression tree in the single parameter t.
class Expr {
public:
    static Expr number(double v);
    static Expr param();
    static Expr call(Func f, Expr arg);

    Jet eval(const Jet& t) const;
    double operator()(double t) const { return eval(Jet::constant(t)).value(); }
    bool depends_on_param() const;
    std::string to_string() const;

    friend Expr operator+(Expr a, Expr b);
    friend Expr operator-(Expr a, Expr b);
    friend Expr operator*(Expr a, Expr b);
    friend Expr operator/(Expr a, Expr b);
    friend Expr operator-(Expr a);
    friend Expr pow(Expr a, Expr b);
    // Replaces every occurrence of t in e by `by`.
    friend Expr substitute(const Expr& e, const Expr& by);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct CurveDefinition {
    std::array<Expr, 3> coords;
    double t_min;
    double t_max;
};

// Parses an expression in t. Identifiers: t, pi, e; functions: sin cos tan exp log
// sqrt abs atan sinh cosh tanh. Throws ParseError.
Expr parse_expression(std::string_view text);

// "(x, y, z) t in (a, b)". The bounds may be constant expressions such as 2*pi.
CurveDefinition parse_curve(std::string_view text);

}  // namespace framecast
