#pragma once

#include "tatep/rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tatep {

/// A point of P^1 evaluated in floating point. `undefined` marks 0*inf and inf+inf.
struct P1Value {
    bool inf = false;
    bool undefined = false;
    std::complex<double> v;
};

/// Immutable expression tree over parameters, Gaussian-rational constants and pi.
///
/// Text form is prefix: (+ a b ...), (- a), (- a b), (* a b ...), (/ a b), (inv a),
/// (expi a) meaning exp(i a); atoms are rationals "p/q", `i`, `pi`, and parameter names.
class Expr {
public:
    enum class Kind { Const, Pi, Param, Add, Mul, Neg, Inv, Expi };
    struct Node;

    Expr();  // the constant 0

    static Expr constant(const ComplexQ& c);
    static Expr constant(const Rational& r) { return constant(ComplexQ{r, 0}); }
    static Expr param(const std::string& name);
    static Expr pi();
    static Expr parse(const std::string& text);

    Kind kind() const;
    const ComplexQ& value() const;
    const std::string& name() const;
    const std::vector<Expr>& args() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr inv(const Expr& a);
    friend Expr expi(const Expr& a);

    Expr derivative(const std::string& param) const;
    Expr substitute(const std::map<std::string, Expr>& subs) const;
    Expr simplify() const;

    std::set<std::string> params() const;
    bool depends_on(const std::string& param) const;

    /// Exact value when the expression is a parameter-free rational-complex constant.
    std::optional<ComplexQ> exact_value() const;
    bool is_exact_zero() const;

    std::string to_string() const;
    friend bool operator==(const Expr& a, const Expr& b) { return a.to_string() == b.to_string(); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
    friend class CompiledExpr;
};

/// Flat postfix program for fast repeated evaluation with parameters bound by position.
class CompiledExpr {
public:
    CompiledExpr() = default;
    CompiledExpr(const Expr& e, const std::vector<std::string>& param_order);

    std::complex<double> eval(const std::complex<double>* params) const;
    P1Value eval_p1(const P1Value* params) const;

private:
    struct Op {
        Expr::Kind kind;
        int arity = 0;
        int index = -1;
        std::complex<double> c;
    };
    std::vector<Op> ops_;
};

}  // namespace tatep
