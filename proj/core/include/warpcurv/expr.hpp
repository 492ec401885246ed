#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "warpcurv/scalar2.hpp"

namespace warpcurv {

/// Immutable closed-form expression tree over named variables.
///
/// Grammar (whitespace-insensitive):
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?          // right-associative
///   atom   := number | name | name '(' expr ')' | '(' expr ')'
/// Names resolve to the calls sin, cos, tan, exp, log, sqrt, sinh, cosh, the
/// constants pi and e, or a declared variable.
class Expr {
public:
    enum class Kind { Literal, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
    enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

    struct Node {
        Kind kind;
        double lit = 0.0;          // Literal
        int var = -1;              // Var: index into the declared list
        std::string name;          // Var name, or "pi"/"e" for named literals
        Fn fn = Fn::Sin;           // Call
        std::shared_ptr<const Node> a, b;
        std::size_t offset = 0;    // byte offset in the source text (0 if built)
    };

    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    bool valid() const { return node_ != nullptr; }
    const Node& root() const { return *node_; }
    std::shared_ptr<const Node> ptr() const { return node_; }

    /// Evaluate over second-order numbers; env[i] binds variable index i.
    /// Domain failures rethrow the adscalar error with the node's byte offset
    /// appended for source context.
    Scalar2 eval(std::span<const Scalar2> env) const;

    /// Value-only evaluation over plain reals (same operation order as eval).
    double eval_value(std::span<const double> env) const;

    /// Canonical text form; parse(print(e)) reproduces the tree.
    std::string print() const;

    /// Exact symbolic derivative with respect to variable index `var`.
    Expr derivative(int var) const;

    /// Indices of variables that occur in the tree.
    std::vector<int> free_vars(int nvars) const;

    /// Structural equality (same shape, same literals, same var indices).
    static bool same(const Expr& x, const Expr& y);

private:
    std::shared_ptr<const Node> node_;
};

/// Parse `text` against an ordered variable list. Throws ParseError with the
/// byte offset on syntax errors and on unknown identifiers.
Expr parse(const std::string& text, const std::vector<std::string>& vars);

/// Builders for programmatic construction (builtin metrics and immersions).
namespace eb {
Expr lit(double v);
Expr var(int index, std::string name);
Expr pi();
Expr e();
Expr neg(Expr a);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr pow(Expr a, Expr b);
Expr call(Expr::Fn f, Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr sqrt(Expr a);
/// Rebuild the tree with every variable index shifted by `offset`
/// (embedding base/fiber expressions into a product chart).
Expr shift_vars(const Expr& x, int offset);
}  // namespace eb

}  // namespace warpcurv
