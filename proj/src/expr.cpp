#include "framecast/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <utility>

#include "framecast/errors.hpp"

namespace framecast {

enum class Op { number, param, neg, add, sub, mul, div, pow, call };

struct Expr::Node {
    Op op;
    double value = 0.0;
    Func func = Func::sin;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

struct FuncName {
    std::string_view name;
    Func func;
};

constexpr FuncName kFunctions[] = {
    {"sin", Func::sin},   {"cos", Func::cos},   {"tan", Func::tan},   {"exp", Func::exp},
    {"log", Func::log},   {"sqrt", Func::sqrt}, {"abs", Func::abs},   {"atan", Func::atan},
    {"sinh", Func::sinh}, {"cosh", Func::cosh}, {"tanh", Func::tanh},
};

std::string_view func_name(Func f) {
    if (f == Func::flat) return "flat";
    for (const auto& fn : kFunctions)
        if (fn.func == f) return fn.name;
    return "?";
}

Jet apply(Func f, const Jet& a) {
    switch (f) {
        case Func::sin: return sin(a);
        case Func::cos: return cos(a);
        case Func::tan: return tan(a);
        case Func::exp: return exp(a);
        case Func::log: return log(a);
        case Func::sqrt: return sqrt(a);
        case Func::abs: return abs(a);
        case Func::atan: return atan(a);
        case Func::sinh: return sinh(a);
        case Func::cosh: return cosh(a);
        case Func::tanh: return tanh(a);
        case Func::flat: return flat(a);
    }
    return a;
}

Jet eval_node(const Expr::Node& n, const Jet& t) {
    switch (n.op) {
        case Op::number: return Jet::constant(n.value);
        case Op::param: return t;
        case Op::neg: return -eval_node(*n.lhs, t);
        case Op::add: return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
        case Op::sub: return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
        case Op::mul: return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
        case Op::div: return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
        case Op::pow: return pow(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
        case Op::call: return apply(n.func, eval_node(*n.lhs, t));
    }
    return Jet{};
}

bool has_param(const Expr::Node& n) {
    if (n.op == Op::param) return true;
    return (n.lhs && has_param(*n.lhs)) || (n.rhs && has_param(*n.rhs));
}

void print(std::ostream& os, const Expr::Node& n) {
    switch (n.op) {
        case Op::number: os << n.value; return;
        case Op::param: os << 't'; return;
        case Op::neg: os << "(-"; print(os, *n.lhs); os << ')'; return;
        case Op::call: os << func_name(n.func) << '('; print(os, *n.lhs); os << ')'; return;
        default: break;
    }
    const char sym = n.op == Op::add ? '+' : n.op == Op::sub ? '-' : n.op == Op::mul ? '*'
                   : n.op == Op::div ? '/' : '^';
    os << '(';
    print(os, *n.lhs);
    os << sym;
    print(os, *n.rhs);
    os << ')';
}

std::shared_ptr<const Expr::Node> subst(const std::shared_ptr<const Expr::Node>& n,
                                        const std::shared_ptr<const Expr::Node>& by) {
    if (!n) return n;
    if (n->op == Op::param) return by;
    auto copy = std::make_shared<Expr::Node>(*n);
    copy->lhs = subst(n->lhs, by);
    copy->rhs = subst(n->rhs, by);
    return copy;
}

class Parser {
public:
    explicit Parser(std::string_view s) : src_(s) {}

    Expr expression() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) lhs = lhs + term();
            else if (accept('-')) lhs = lhs - term();
            else return lhs;
        }
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void expect_word(std::string_view w) {
        skip_ws();
        const std::size_t at = pos_;
        if (identifier() != w) throw ParseError("expected '" + std::string(w) + "'", at);
    }

    void expect_end() {
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    }

    std::size_t position() const { return pos_; }

private:
    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = lhs * unary();
            else if (accept('/')) lhs = lhs / unary();
            else return lhs;
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept('^')) return pow(base, unary());
        return base;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::number(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t at = pos_;
            const std::string_view id = identifier();
            if (id == "t") return Expr::param();
            if (id == "pi") return Expr::number(std::numbers::pi);
            if (id == "e") return Expr::number(std::numbers::e);
            for (const auto& fn : kFunctions) {
                if (fn.name == id) {
                    expect('(');
                    Expr arg = expression();
                    expect(')');
                    return Expr::call(fn.func, arg);
                }
            }
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == '(')
                throw ParseError("unknown function '" + std::string(id) + "'", at);
            throw ParseError("unknown identifier '" + std::string(id) + "'", at);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    double number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        if (text == ".") throw ParseError("malformed number", start);
        return std::strtod(text.c_str(), nullptr);
    }

    std::string_view identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        return src_.substr(start, pos_ - start);
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

std::shared_ptr<const Expr::Node> make(Op op, std::shared_ptr<const Expr::Node> l = nullptr,
                                       std::shared_ptr<const Expr::Node> r = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

double constant_bound(Parser& p) {
    const std::size_t at = p.position();
    Expr e = p.expression();
    if (e.depends_on_param()) throw ParseError("domain bound depends on t", at);
    const double v = e(0.0);
    if (!std::isfinite(v)) throw ParseError("domain bound is not finite", at);
    return v;
}

}  // namespace

Expr Expr::number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::number;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::param() { return Expr(make(Op::param)); }

Expr Expr::call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->op = Op::call;
    n->func = f;
    n->lhs = std::move(arg.node_);
    return Expr(std::move(n));
}

Jet Expr::eval(const Jet& t) const { return eval_node(*node_, t); }

bool Expr::depends_on_param() const { return has_param(*node_); }

std::string Expr::to_string() const {
    std::ostringstream os;
    os.precision(17);
    print(os, *node_);
    return os.str();
}

Expr operator+(Expr a, Expr b) { return Expr(make(Op::add, a.node_, b.node_)); }
Expr operator-(Expr a, Expr b) { return Expr(make(Op::sub, a.node_, b.node_)); }
Expr operator*(Expr a, Expr b) { return Expr(make(Op::mul, a.node_, b.node_)); }
Expr operator/(Expr a, Expr b) { return Expr(make(Op::div, a.node_, b.node_)); }
Expr operator-(Expr a) { return Expr(make(Op::neg, a.node_)); }
Expr pow(Expr a, Expr b) { return Expr(make(Op::pow, a.node_, b.node_)); }

Expr substitute(const Expr& e, const Expr& by) { return Expr(subst(e.node_, by.node_)); }

Expr parse_expression(std::string_view text) {
    Parser p(text);
    Expr e = p.expression();
    p.expect_end();
    return e;
}

CurveDefinition parse_curve(std::string_view text) {
    Parser p(text);
    p.expect('(');
    Expr x = p.expression();
    p.expect(',');
    Expr y = p.expression();
    p.expect(',');
    Expr z = p.expression();
    p.expect(')');
    p.expect_word("t");
    p.expect_word("in");
    p.expect('(');
    const std::size_t at = p.position();
    const double a = constant_bound(p);
    p.expect(',');
    const double b = constant_bound(p);
    p.expect(')');
    p.expect_end();
    if (!(a < b)) throw ParseError("empty or inverted domain", at);
    return CurveDefinition{{x, y, z}, a, b};
}

}  // namespace framecast
