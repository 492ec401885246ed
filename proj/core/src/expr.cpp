#include "warpcurv/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "warpcurv/errors.hpp"

namespace warpcurv {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Expr::Kind;
using Fn = Expr::Fn;

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

const std::map<std::string, Fn, std::less<>> kFunctions = {
    {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan},
    {"exp", Fn::Exp},   {"log", Fn::Log},   {"sqrt", Fn::Sqrt},
    {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
};

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Tan: return "tan";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
        case Fn::Sqrt: return "sqrt";
        case Fn::Sinh: return "sinh";
        case Fn::Cosh: return "cosh";
    }
    return "?";
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : s_(text), vars_(vars) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            std::size_t at = pos_;
            if (accept('+')) {
                lhs = make({.kind = Kind::Add, .a = lhs, .b = term(), .offset = at});
            } else if (accept('-')) {
                lhs = make({.kind = Kind::Sub, .a = lhs, .b = term(), .offset = at});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            std::size_t at = pos_;
            if (accept('*')) {
                lhs = make({.kind = Kind::Mul, .a = lhs, .b = unary(), .offset = at});
            } else if (accept('/')) {
                lhs = make({.kind = Kind::Div, .a = lhs, .b = unary(), .offset = at});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        std::size_t at = pos_;
        if (accept('-'))
            return make({.kind = Kind::Neg, .a = unary(), .offset = at});
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        std::size_t at = pos_;
        if (accept('^'))
            return make({.kind = Kind::Pow, .a = base, .b = unary(), .offset = at});
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError(pos_, "expected operand");
        const std::size_t at = pos_;
        const char c = s_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number(at);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier(at);
        throw ParseError(at, std::string("unexpected character '") + c + "'");
    }

    NodePtr number(std::size_t at) {
        double v = 0.0;
        const char* begin = s_.data() + at;
        const char* end = s_.data() + s_.size();
        auto [p, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc()) throw ParseError(at, "malformed number");
        pos_ = static_cast<std::size_t>(p - s_.data());
        return make({.kind = Kind::Literal, .lit = v, .offset = at});
    }

    NodePtr identifier(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[end])) ||
                s_[end] == '_'))
            ++end;
        std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;

        if (auto it = kFunctions.find(name); it != kFunctions.end()) {
            if (!accept('('))
                throw ParseError(pos_, "expected '(' after '" + name + "'");
            NodePtr arg = expr();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return make({.kind = Kind::Call, .name = std::move(name),
                         .fn = it->second, .a = arg, .offset = at});
        }
        if (name == "pi")
            return make({.kind = Kind::Literal, .lit = M_PI, .name = "pi",
                         .offset = at});
        if (name == "e")
            return make({.kind = Kind::Literal, .lit = M_E, .name = "e",
                         .offset = at});
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name)
                return make({.kind = Kind::Var, .var = static_cast<int>(i),
                             .name = std::move(name), .offset = at});
        }
        throw ParseError(at, "unknown identifier '" + name + "'");
    }
};

bool tree_has_vars(const Node& n) {
    if (n.kind == Kind::Var) return true;
    if (n.a && tree_has_vars(*n.a)) return true;
    if (n.b && tree_has_vars(*n.b)) return true;
    return false;
}

Scalar2 eval_node(const Node& n, std::span<const Scalar2> env) {
    const int dim = env.empty() ? 0 : env[0].dim();
    try {
        switch (n.kind) {
            case Kind::Literal: return Scalar2::constant(n.lit, dim);
            case Kind::Var:
                if (n.var < 0 || n.var >= static_cast<int>(env.size()))
                    throw std::logic_error("unbound variable " + n.name);
                return env[static_cast<std::size_t>(n.var)];
            case Kind::Neg: return -eval_node(*n.a, env);
            case Kind::Add: return eval_node(*n.a, env) + eval_node(*n.b, env);
            case Kind::Sub: return eval_node(*n.a, env) - eval_node(*n.b, env);
            case Kind::Mul: return eval_node(*n.a, env) * eval_node(*n.b, env);
            case Kind::Div: return eval_node(*n.a, env) / eval_node(*n.b, env);
            case Kind::Pow: {
                // Routing is decided by the tree: a variable-free exponent is
                // a constant power (integer powers stay valid for any base);
                // otherwise the general exp(b log a) rule applies.
                Scalar2 base = eval_node(*n.a, env);
                Scalar2 expo = eval_node(*n.b, env);
                if (!tree_has_vars(*n.b)) return pow(base, expo.value());
                return exp(expo * log(base));
            }
            case Kind::Call: {
                Scalar2 a = eval_node(*n.a, env);
                switch (n.fn) {
                    case Fn::Sin: return sin(a);
                    case Fn::Cos: return cos(a);
                    case Fn::Tan: return tan(a);
                    case Fn::Exp: return exp(a);
                    case Fn::Log: return log(a);
                    case Fn::Sqrt: return sqrt(a);
                    case Fn::Sinh: return sinh(a);
                    case Fn::Cosh: return cosh(a);
                }
                break;
            }
        }
    } catch (const EvalError& err) {
        if (n.kind == Kind::Call || n.kind == Kind::Div || n.kind == Kind::Pow)
            throw EvalError(err.op(), err.value(),
                            "at offset " + std::to_string(n.offset));
        throw;
    }
    throw std::logic_error("corrupt expression node");
}

double eval_value_node(const Node& n, std::span<const double> env);

double pow_value(const Node& n, std::span<const double> env) {
    const double a = eval_value_node(*n.a, env);
    const double b = eval_value_node(*n.b, env);
    // Mirror the hyper-dual semantics bit for bit: constant integer exponents
    // go through repeated multiplication, constant reals through std::pow,
    // variable exponents through exp(b log a).
    if (!tree_has_vars(*n.b)) {
        if (b == std::floor(b) && std::abs(b) <= 64.0) {
            long long k = static_cast<long long>(b);
            if (k == 0) return 1.0;
            const bool neg = k < 0;
            if (neg) k = -k;
            double r = a;
            for (long long i = 1; i < k; ++i) r = r * a;
            return neg ? 1.0 / r : r;
        }
        if (!(a > 0.0))
            throw EvalError("pow", a,
                            "non-integer exponent needs positive base at offset " +
                                std::to_string(n.offset));
        return std::pow(a, b);
    }
    if (!(a > 0.0))
        throw EvalError("pow", a, "variable exponent needs positive base at offset " +
                                      std::to_string(n.offset));
    return std::exp(b * std::log(a));
}

double eval_value_node(const Node& n, std::span<const double> env) {
    switch (n.kind) {
        case Kind::Literal: return n.lit;
        case Kind::Var: return env[static_cast<std::size_t>(n.var)];
        case Kind::Neg: return -eval_value_node(*n.a, env);
        case Kind::Add:
            return eval_value_node(*n.a, env) + eval_value_node(*n.b, env);
        case Kind::Sub:
            return eval_value_node(*n.a, env) - eval_value_node(*n.b, env);
        case Kind::Mul:
            return eval_value_node(*n.a, env) * eval_value_node(*n.b, env);
        case Kind::Div: {
            const double d = eval_value_node(*n.b, env);
            if (d == 0.0)
                throw EvalError("/", 0.0, "division by zero at offset " +
                                              std::to_string(n.offset));
            return eval_value_node(*n.a, env) / d;
        }
        case Kind::Pow: return pow_value(n, env);
        case Kind::Call: {
            const double a = eval_value_node(*n.a, env);
            auto guard = [&](bool ok, const char* op) {
                if (!ok)
                    throw EvalError(op, a, "domain error at offset " +
                                               std::to_string(n.offset));
            };
            switch (n.fn) {
                case Fn::Sin: return std::sin(a);
                case Fn::Cos: return std::cos(a);
                case Fn::Tan: return std::tan(a);
                case Fn::Exp: return std::exp(a);
                case Fn::Log: guard(a > 0.0, "log"); return std::log(a);
                case Fn::Sqrt: guard(a >= 0.0, "sqrt"); return std::sqrt(a);
                case Fn::Sinh: return std::sinh(a);
                case Fn::Cosh: return std::cosh(a);
            }
            break;
        }
    }
    throw std::logic_error("corrupt expression node");
}

int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const Node& n, std::string& out);

/// Effective precedence of a node as printed: a bare negative literal prints
/// through a leading '-' and binds like unary minus.
int node_prec(const Node& n) {
    if (n.kind == Kind::Literal && n.lit < 0.0 && n.name.empty())
        return precedence(Kind::Neg);
    return precedence(n.kind);
}

void print_child(const Node& child, int parent_prec, bool tight,
                 std::string& out) {
    const bool parens = node_prec(child) < parent_prec ||
                        (tight && node_prec(child) == parent_prec);
    if (parens) out += '(';
    print_node(child, out);
    if (parens) out += ')';
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
        case Kind::Literal: {
            if (n.name == "pi" || n.name == "e") {
                out += n.name;
                return;
            }
            char buf[40];
            if (n.lit < 0.0) {
                // Negative literals print as a unary minus expression.
                std::snprintf(buf, sizeof buf, "%.17g", -n.lit);
                out += "-";
                out += buf;
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", n.lit);
                out += buf;
            }
            return;
        }
        case Kind::Var: out += n.name; return;
        case Kind::Neg:
            out += '-';
            print_child(*n.a, precedence(Kind::Neg), true, out);
            return;
        case Kind::Add:
            print_child(*n.a, 1, false, out);
            out += " + ";
            print_child(*n.b, 1, true, out);
            return;
        case Kind::Sub:
            print_child(*n.a, 1, false, out);
            out += " - ";
            print_child(*n.b, 1, true, out);
            return;
        case Kind::Mul:
            print_child(*n.a, 2, false, out);
            out += "*";
            print_child(*n.b, 2, true, out);
            return;
        case Kind::Div:
            print_child(*n.a, 2, false, out);
            out += "/";
            print_child(*n.b, 2, true, out);
            return;
        case Kind::Pow:
            print_child(*n.a, 4, true, out);
            out += "^";
            // Right child of ^ is a unary-level production; no parens needed
            // at equal precedence.
            print_child(*n.b, 4, false, out);
            return;
        case Kind::Call:
            out += fn_name(n.fn);
            out += '(';
            print_node(*n.a, out);
            out += ')';
            return;
    }
}

NodePtr d0() { return make({.kind = Kind::Literal, .lit = 0.0}); }
NodePtr d1() { return make({.kind = Kind::Literal, .lit = 1.0}); }

NodePtr deriv(const NodePtr& n, int var);

NodePtr nmul(NodePtr a, NodePtr b) {
    return make({.kind = Kind::Mul, .a = std::move(a), .b = std::move(b)});
}
NodePtr nadd(NodePtr a, NodePtr b) {
    return make({.kind = Kind::Add, .a = std::move(a), .b = std::move(b)});
}
NodePtr nsub(NodePtr a, NodePtr b) {
    return make({.kind = Kind::Sub, .a = std::move(a), .b = std::move(b)});
}
NodePtr ndiv(NodePtr a, NodePtr b) {
    return make({.kind = Kind::Div, .a = std::move(a), .b = std::move(b)});
}
NodePtr nneg(NodePtr a) { return make({.kind = Kind::Neg, .a = std::move(a)}); }
NodePtr ncall(Fn f, NodePtr a) {
    return make({.kind = Kind::Call, .name = fn_name(f), .fn = f,
                 .a = std::move(a)});
}

NodePtr deriv_call(const Node& n, int var) {
    NodePtr da = deriv(n.a, var);
    switch (n.fn) {
        case Fn::Sin: return nmul(ncall(Fn::Cos, n.a), da);
        case Fn::Cos: return nneg(nmul(ncall(Fn::Sin, n.a), da));
        case Fn::Tan: {
            NodePtr c = ncall(Fn::Cos, n.a);
            return ndiv(da, nmul(c, c));
        }
        case Fn::Exp: return nmul(ncall(Fn::Exp, n.a), da);
        case Fn::Log: return ndiv(da, n.a);
        case Fn::Sqrt:
            return ndiv(da, nmul(make({.kind = Kind::Literal, .lit = 2.0}),
                                 ncall(Fn::Sqrt, n.a)));
        case Fn::Sinh: return nmul(ncall(Fn::Cosh, n.a), da);
        case Fn::Cosh: return nmul(ncall(Fn::Sinh, n.a), da);
    }
    throw std::logic_error("corrupt call node");
}

NodePtr deriv(const NodePtr& np, int var) {
    const Node& n = *np;
    switch (n.kind) {
        case Kind::Literal: return d0();
        case Kind::Var: return n.var == var ? d1() : d0();
        case Kind::Neg: return nneg(deriv(n.a, var));
        case Kind::Add: return nadd(deriv(n.a, var), deriv(n.b, var));
        case Kind::Sub: return nsub(deriv(n.a, var), deriv(n.b, var));
        case Kind::Mul:
            return nadd(nmul(deriv(n.a, var), n.b), nmul(n.a, deriv(n.b, var)));
        case Kind::Div:
            return ndiv(nsub(nmul(deriv(n.a, var), n.b),
                             nmul(n.a, deriv(n.b, var))),
                        nmul(n.b, n.b));
        case Kind::Pow: {
            // Integer literal exponent: d(a^k) = k a^(k-1) a'. Otherwise the
            // general a^b = exp(b log a) rule (requires a > 0 at evaluation).
            if (n.b->kind == Kind::Literal && n.b->lit == std::floor(n.b->lit)) {
                const double k = n.b->lit;
                if (k == 0.0) return d0();
                NodePtr km1 = make({.kind = Kind::Literal, .lit = k - 1.0});
                NodePtr p = make({.kind = Kind::Pow, .a = n.a, .b = km1});
                return nmul(make({.kind = Kind::Literal, .lit = k}),
                            nmul(p, deriv(n.a, var)));
            }
            NodePtr self = np;
            NodePtr inner = nadd(nmul(deriv(n.b, var), ncall(Fn::Log, n.a)),
                                 ndiv(nmul(n.b, deriv(n.a, var)), n.a));
            return nmul(self, inner);
        }
        case Kind::Call: return deriv_call(n, var);
    }
    throw std::logic_error("corrupt expression node");
}

void collect_vars(const Node& n, std::vector<bool>& seen) {
    if (n.kind == Kind::Var && n.var >= 0 &&
        n.var < static_cast<int>(seen.size()))
        seen[static_cast<std::size_t>(n.var)] = true;
    if (n.a) collect_vars(*n.a, seen);
    if (n.b) collect_vars(*n.b, seen);
}

NodePtr shift_node(const NodePtr& np, int offset) {
    Node n = *np;
    if (n.kind == Kind::Var) n.var += offset;
    if (n.a) n.a = shift_node(n.a, offset);
    if (n.b) n.b = shift_node(n.b, offset);
    return make(std::move(n));
}

bool same_node(const Node& x, const Node& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Kind::Literal: return x.lit == y.lit;
        case Kind::Var: return x.var == y.var;
        case Kind::Call:
            if (x.fn != y.fn) return false;
            break;
        default: break;
    }
    if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
    if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
    if (x.a && !same_node(*x.a, *y.a)) return false;
    if (x.b && !same_node(*x.b, *y.b)) return false;
    return true;
}

}  // namespace

Scalar2 Expr::eval(std::span<const Scalar2> env) const {
    return eval_node(root(), env);
}

double Expr::eval_value(std::span<const double> env) const {
    return eval_value_node(root(), env);
}

std::string Expr::print() const {
    std::string out;
    print_node(root(), out);
    return out;
}

Expr Expr::derivative(int var) const { return Expr(deriv(node_, var)); }

std::vector<int> Expr::free_vars(int nvars) const {
    std::vector<bool> seen(static_cast<std::size_t>(nvars), false);
    collect_vars(root(), seen);
    std::vector<int> out;
    for (int i = 0; i < nvars; ++i)
        if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

bool Expr::same(const Expr& x, const Expr& y) {
    return same_node(x.root(), y.root());
}

Expr parse(const std::string& text, const std::vector<std::string>& vars) {
    return Expr(Parser(text, vars).run());
}

namespace eb {

Expr lit(double v) { return Expr(make({.kind = Kind::Literal, .lit = v})); }
Expr var(int index, std::string name) {
    return Expr(make({.kind = Kind::Var, .var = index, .name = std::move(name)}));
}
Expr pi() { return Expr(make({.kind = Kind::Literal, .lit = M_PI, .name = "pi"})); }
Expr e() { return Expr(make({.kind = Kind::Literal, .lit = M_E, .name = "e"})); }
Expr neg(Expr a) { return Expr(nneg(a.ptr())); }
Expr add(Expr a, Expr b) { return Expr(nadd(a.ptr(), b.ptr())); }
Expr sub(Expr a, Expr b) { return Expr(nsub(a.ptr(), b.ptr())); }
Expr mul(Expr a, Expr b) { return Expr(nmul(a.ptr(), b.ptr())); }
Expr div(Expr a, Expr b) { return Expr(ndiv(a.ptr(), b.ptr())); }
Expr pow(Expr a, Expr b) {
    return Expr(make({.kind = Kind::Pow, .a = a.ptr(), .b = b.ptr()}));
}
Expr call(Fn f, Expr a) { return Expr(ncall(f, a.ptr())); }
Expr sin(Expr a) { return call(Fn::Sin, std::move(a)); }
Expr cos(Expr a) { return call(Fn::Cos, std::move(a)); }
Expr sqrt(Expr a) { return call(Fn::Sqrt, std::move(a)); }
Expr shift_vars(const Expr& x, int offset) {
    return Expr(shift_node(x.ptr(), offset));
}

}  // namespace eb

}  // namespace warpcurv
