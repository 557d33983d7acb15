#include "tatep/expr.hpp"

#include "tatep/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tatep {

struct Expr::Node {
    Kind kind;
    ComplexQ value;
    std::string name;
    std::vector<Expr> args;
};

namespace {

std::shared_ptr<const Expr::Node> make_node(Expr::Kind k, std::vector<Expr> args)
{
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->args = std::move(args);
    return n;
}

}  // namespace

Expr::Expr() : Expr(constant(ComplexQ{})) {}

Expr Expr::constant(const ComplexQ& c)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = c;
    return Expr(n);
}

Expr Expr::param(const std::string& name)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Param;
    n->name = name;
    return Expr(n);
}

Expr Expr::pi()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pi;
    return Expr(n);
}

Expr::Kind Expr::kind() const { return node_->kind; }
const ComplexQ& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_node(Expr::Kind::Add, {a, b})); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_node(Expr::Kind::Mul, {a, b})); }
Expr operator/(const Expr& a, const Expr& b) { return a * inv(b); }
Expr operator-(const Expr& a) { return Expr(make_node(Expr::Kind::Neg, {a})); }
Expr inv(const Expr& a) { return Expr(make_node(Expr::Kind::Inv, {a})); }
Expr expi(const Expr& a) { return Expr(make_node(Expr::Kind::Expi, {a})); }

// ---------------------------------------------------------------- calculus

Expr Expr::derivative(const std::string& p) const
{
    switch (kind()) {
    case Kind::Const:
    case Kind::Pi:
        return Expr();
    case Kind::Param:
        return constant(Rational(name() == p ? 1 : 0));
    case Kind::Add: {
        Expr s;
        for (auto& a : args()) s = s + a.derivative(p);
        return s.simplify();
    }
    case Kind::Mul: {
        Expr s;
        const auto& xs = args();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Expr term = xs[i].derivative(p);
            for (std::size_t j = 0; j < xs.size(); ++j)
                if (j != i) term = term * xs[j];
            s = s + term;
        }
        return s.simplify();
    }
    case Kind::Neg:
        return (-args()[0].derivative(p)).simplify();
    case Kind::Inv: {
        const Expr& a = args()[0];
        return (-(a.derivative(p) * inv(a) * inv(a))).simplify();
    }
    case Kind::Expi: {
        const Expr& a = args()[0];
        return (constant(ComplexQ{0, 1}) * a.derivative(p) * *this).simplify();
    }
    }
    return Expr();
}

Expr Expr::substitute(const std::map<std::string, Expr>& subs) const
{
    switch (kind()) {
    case Kind::Const:
    case Kind::Pi:
        return *this;
    case Kind::Param: {
        auto it = subs.find(name());
        return it == subs.end() ? *this : it->second;
    }
    default: {
        std::vector<Expr> xs;
        for (auto& a : args()) xs.push_back(a.substitute(subs));
        return Expr(make_node(kind(), std::move(xs)));
    }
    }
}

namespace {

bool is_const(const Expr& e) { return e.kind() == Expr::Kind::Const; }

}  // namespace

Expr Expr::simplify() const
{
    switch (kind()) {
    case Kind::Const:
    case Kind::Pi:
    case Kind::Param:
        return *this;
    case Kind::Neg: {
        Expr a = args()[0].simplify();
        if (is_const(a)) return constant(ComplexQ{-a.value().re, -a.value().im});
        if (a.kind() == Kind::Neg) return a.args()[0];
        return Expr(make_node(Kind::Neg, {a}));
    }
    case Kind::Inv: {
        Expr a = args()[0].simplify();
        if (is_const(a) && !a.value().is_zero()) {
            Rational n2 = a.value().norm2();
            return constant(ComplexQ{a.value().re / n2, -a.value().im / n2});
        }
        if (a.kind() == Kind::Inv) return a.args()[0];
        if (a.kind() == Kind::Neg) return (-inv(a.args()[0])).simplify();
        return Expr(make_node(Kind::Inv, {a}));
    }
    case Kind::Expi: {
        Expr a = args()[0].simplify();
        if (a.is_exact_zero()) return constant(Rational(1));
        return Expr(make_node(Kind::Expi, {a}));
    }
    case Kind::Add: {
        ComplexQ c;
        std::vector<Expr> rest;
        std::vector<Expr> stack(args().rbegin(), args().rend());
        while (!stack.empty()) {
            Expr a = stack.back().simplify();
            stack.pop_back();
            if (a.kind() == Kind::Add) {
                for (auto it = a.args().rbegin(); it != a.args().rend(); ++it) stack.push_back(*it);
            } else if (is_const(a)) {
                c = c + a.value();
            } else {
                rest.push_back(a);
            }
        }
        // cancel x + (-x) pairs
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i].kind() != Kind::Neg) continue;
            std::string target = rest[i].args()[0].to_string();
            for (std::size_t j = 0; j < rest.size(); ++j)
                if (j != i && rest[j].kind() != Kind::Neg && rest[j].to_string() == target) {
                    rest.erase(rest.begin() + static_cast<long>(std::max(i, j)));
                    rest.erase(rest.begin() + static_cast<long>(std::min(i, j)));
                    i = static_cast<std::size_t>(-1);
                    break;
                }
        }
        if (!c.is_zero()) rest.insert(rest.begin(), constant(c));
        if (rest.empty()) return Expr();
        if (rest.size() == 1) return rest[0];
        return Expr(make_node(Kind::Add, std::move(rest)));
    }
    case Kind::Mul: {
        ComplexQ c{1, 0};
        bool negate = false;
        std::vector<Expr> rest;
        std::vector<Expr> stack(args().rbegin(), args().rend());
        while (!stack.empty()) {
            Expr a = stack.back().simplify();
            stack.pop_back();
            if (a.kind() == Kind::Mul) {
                for (auto it = a.args().rbegin(); it != a.args().rend(); ++it) stack.push_back(*it);
            } else if (a.kind() == Kind::Neg) {
                negate = !negate;
                stack.push_back(a.args()[0]);
            } else if (is_const(a)) {
                c = c * a.value();
            } else {
                rest.push_back(a);
            }
        }
        if (negate) c = ComplexQ{-c.re, -c.im};
        if (c.is_zero()) return Expr();
        // cancel x * inv(x)
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i].kind() != Kind::Inv) continue;
            std::string target = rest[i].args()[0].to_string();
            for (std::size_t j = 0; j < rest.size(); ++j)
                if (j != i && rest[j].to_string() == target) {
                    rest.erase(rest.begin() + static_cast<long>(std::max(i, j)));
                    rest.erase(rest.begin() + static_cast<long>(std::min(i, j)));
                    i = static_cast<std::size_t>(-1);
                    break;
                }
        }
        if (rest.empty()) return constant(c);
        Expr body = rest.size() == 1 ? rest[0] : Expr(make_node(Kind::Mul, rest));
        if (c.is_one()) return body;
        if (c.re == -1 && sgn(c.im) == 0) return Expr(make_node(Kind::Neg, {body}));
        rest.insert(rest.begin(), constant(c));
        return Expr(make_node(Kind::Mul, std::move(rest)));
    }
    }
    return *this;
}

std::set<std::string> Expr::params() const
{
    std::set<std::string> out;
    if (kind() == Kind::Param) out.insert(name());
    for (auto& a : args()) {
        auto s = a.params();
        out.insert(s.begin(), s.end());
    }
    return out;
}

bool Expr::depends_on(const std::string& p) const
{
    if (kind() == Kind::Param) return name() == p;
    return std::any_of(args().begin(), args().end(), [&](const Expr& a) { return a.depends_on(p); });
}

std::optional<ComplexQ> Expr::exact_value() const
{
    Expr s = simplify();
    if (is_const(s)) return s.value();
    return std::nullopt;
}

bool Expr::is_exact_zero() const
{
    auto v = exact_value();
    return v && v->is_zero();
}

// ---------------------------------------------------------------- text

namespace {

std::string const_string(const ComplexQ& c)
{
    if (sgn(c.im) == 0) return to_string(c.re);
    std::string im = c.im == 1 ? "i" : "(* " + to_string(c.im) + " i)";
    if (sgn(c.re) == 0) return im;
    return "(+ " + to_string(c.re) + " " + im + ")";
}

const char* op_name(Expr::Kind k)
{
    switch (k) {
    case Expr::Kind::Add: return "+";
    case Expr::Kind::Mul: return "*";
    case Expr::Kind::Neg: return "-";
    case Expr::Kind::Inv: return "inv";
    case Expr::Kind::Expi: return "expi";
    default: return "?";
    }
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string token()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')')
            ++pos_;
        if (start == pos_) fail("expected a token");
        return s_.substr(start, pos_ - start);
    }

    Expr parse_expr()
    {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (s_[pos_] == ')') fail("unexpected ')'");
        if (s_[pos_] != '(') return atom(token());
        ++pos_;
        std::string op = token();
        std::vector<Expr> xs;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) fail("missing ')'");
            if (s_[pos_] == ')') {
                ++pos_;
                break;
            }
            xs.push_back(parse_expr());
        }
        auto need = [&](std::size_t lo, std::size_t hi) {
            if (xs.size() < lo || xs.size() > hi) fail("wrong number of arguments to '" + op + "'");
        };
        if (op == "+") {
            need(1, 1000);
            Expr e = xs[0];
            for (std::size_t i = 1; i < xs.size(); ++i) e = e + xs[i];
            return e;
        }
        if (op == "*") {
            need(1, 1000);
            Expr e = xs[0];
            for (std::size_t i = 1; i < xs.size(); ++i) e = e * xs[i];
            return e;
        }
        if (op == "-") {
            need(1, 2);
            return xs.size() == 1 ? -xs[0] : xs[0] - xs[1];
        }
        if (op == "/") {
            need(2, 2);
            return xs[0] / xs[1];
        }
        if (op == "inv") {
            need(1, 1);
            return inv(xs[0]);
        }
        if (op == "expi") {
            need(1, 1);
            return expi(xs[0]);
        }
        fail("unknown operator '" + op + "'");
    }

    Expr atom(const std::string& t)
    {
        if (t == "i") return Expr::constant(ComplexQ{0, 1});
        if (t == "pi") return Expr::pi();
        char c = t[0];
        if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && t.size() > 1)) {
            try {
                return Expr::constant(parse_rational(t));
            } catch (const ParseError& e) {
                fail(e.what());
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            for (char ch : t)
                if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') fail("bad identifier '" + t + "'");
            return Expr::param(t);
        }
        fail("bad atom '" + t + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string Expr::to_string() const
{
    switch (kind()) {
    case Kind::Const: return const_string(value());
    case Kind::Pi: return "pi";
    case Kind::Param: return name();
    default: {
        std::string s = "(";
        s += op_name(kind());
        for (auto& a : args()) s += " " + a.to_string();
        return s + ")";
    }
    }
}

Expr Expr::parse(const std::string& text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------- compiled

namespace {

void emit(const Expr& e, const std::vector<std::string>& order, std::vector<std::tuple<Expr::Kind, int, int,
                                                                                       std::complex<double>>>& out)
{
    for (auto& a : e.args()) emit(a, order, out);
    int index = -1;
    std::complex<double> c;
    if (e.kind() == Expr::Kind::Param) {
        auto it = std::find(order.begin(), order.end(), e.name());
        if (it == order.end()) throw DomainError("unbound parameter '" + e.name() + "'");
        index = static_cast<int>(it - order.begin());
    } else if (e.kind() == Expr::Kind::Const) {
        c = e.value().to_complex();
    } else if (e.kind() == Expr::Kind::Pi) {
        c = std::numbers::pi;
    }
    out.emplace_back(e.kind(), static_cast<int>(e.args().size()), index, c);
}

P1Value p1_add(const P1Value& a, const P1Value& b)
{
    if (a.undefined || b.undefined || (a.inf && b.inf)) return {false, true, {}};
    if (a.inf || b.inf) return {true, false, {}};
    return {false, false, a.v + b.v};
}

P1Value p1_mul(const P1Value& a, const P1Value& b)
{
    if (a.undefined || b.undefined) return {false, true, {}};
    if (a.inf || b.inf) {
        const P1Value& other = a.inf ? b : a;
        if (!other.inf && other.v == 0.0) return {false, true, {}};
        return {true, false, {}};
    }
    return {false, false, a.v * b.v};
}

}  // namespace

CompiledExpr::CompiledExpr(const Expr& e, const std::vector<std::string>& order)
{
    std::vector<std::tuple<Expr::Kind, int, int, std::complex<double>>> prog;
    emit(e, order, prog);
    for (auto& [k, ar, idx, c] : prog) ops_.push_back(Op{k, ar, idx, c});
}

std::complex<double> CompiledExpr::eval(const std::complex<double>* params) const
{
    std::complex<double> stack[64];
    int sp = 0;
    for (const Op& op : ops_) {
        switch (op.kind) {
        case Expr::Kind::Const:
        case Expr::Kind::Pi: stack[sp++] = op.c; break;
        case Expr::Kind::Param: stack[sp++] = params[op.index]; break;
        case Expr::Kind::Add: {
            std::complex<double> s = 0.0;
            for (int i = 0; i < op.arity; ++i) s += stack[--sp];
            stack[sp++] = s;
            break;
        }
        case Expr::Kind::Mul: {
            std::complex<double> s = 1.0;
            for (int i = 0; i < op.arity; ++i) s *= stack[--sp];
            stack[sp++] = s;
            break;
        }
        case Expr::Kind::Neg: stack[sp - 1] = -stack[sp - 1]; break;
        case Expr::Kind::Inv: stack[sp - 1] = 1.0 / stack[sp - 1]; break;
        case Expr::Kind::Expi: {
            std::complex<double> a = stack[sp - 1];
            stack[sp - 1] = std::exp(std::complex<double>(-a.imag(), a.real()));
            break;
        }
        }
        if (sp >= 63) throw DomainError("expression too deep for evaluation");
    }
    return stack[0];
}

P1Value CompiledExpr::eval_p1(const P1Value* params) const
{
    std::vector<P1Value> stack;
    stack.reserve(16);
    for (const Op& op : ops_) {
        switch (op.kind) {
        case Expr::Kind::Const:
        case Expr::Kind::Pi: stack.push_back({false, false, op.c}); break;
        case Expr::Kind::Param: stack.push_back(params[op.index]); break;
        case Expr::Kind::Add: {
            P1Value s{false, false, 0.0};
            for (int i = 0; i < op.arity; ++i) {
                s = p1_add(s, stack.back());
                stack.pop_back();
            }
            stack.push_back(s);
            break;
        }
        case Expr::Kind::Mul: {
            P1Value s{false, false, 1.0};
            for (int i = 0; i < op.arity; ++i) {
                s = p1_mul(s, stack.back());
                stack.pop_back();
            }
            stack.push_back(s);
            break;
        }
        case Expr::Kind::Neg: stack.back().v = -stack.back().v; break;
        case Expr::Kind::Inv: {
            P1Value& a = stack.back();
            if (a.undefined) break;
            if (a.inf) a = {false, false, 0.0};
            else if (a.v == 0.0) a = {true, false, {}};
            else a.v = 1.0 / a.v;
            break;
        }
        case Expr::Kind::Expi: {
            P1Value& a = stack.back();
            if (a.inf || a.undefined) a = {false, true, {}};
            else a.v = std::exp(std::complex<double>(-a.v.imag(), a.v.real()));
            break;
        }
        }
    }
    return stack.back();
}

}  // namespace tatep
