#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gexpect {

/// Raised when an expression string does not conform to the grammar.
/// Carries the byte offset of the failure and the tokens that would have
/// been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, std::string expected, const std::string& text);
    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

/// Raised on evaluation of an expression outside its domain (log of a
/// nonpositive value) or with an unbound variable.
class EvalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Variable bindings for expression evaluation. Unset fields are unbound;
/// referencing an unbound variable throws EvalError. `x` and `x1` are the
/// same binding.
struct EvalContext {
    std::optional<double> x1;
    std::optional<double> x2;
    std::optional<double> y;
    std::optional<double> t;

    static EvalContext at_x(double x) { return EvalContext{x, {}, {}, {}}; }
    static EvalContext at_xy(double x, double y) { return EvalContext{x, {}, y, {}}; }
    static EvalContext at_tx(double t, double x) { return EvalContext{x, {}, {}, t}; }
};

/// Immutable expression tree over the closed payoff/driver grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ["-"] atom
///   atom   := number | "x" | "x1" | "x2" | "y" | "t"
///           | func "(" expr ("," expr)* ")" | "(" expr ")"
///   func   in {max, min, exp, log, abs, pow, sin, cos}
/// pow takes an integer literal exponent. Values are shared; copying a
/// FieldExpr is cheap and thread-safe.
class FieldExpr {
public:
    FieldExpr() = default;

    static FieldExpr parse(std::string_view text);
    static FieldExpr constant(double c);

    bool empty() const { return root_ == nullptr; }

    double eval(const EvalContext& ctx) const;
    double operator()(double x) const { return eval(EvalContext::at_x(x)); }

    /// Canonical printer; parse(str()) reproduces the same tree.
    std::string str() const;

    bool uses_y() const;
    bool uses_x2() const;
    bool uses_t() const;

    struct Node;

private:
    explicit FieldExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

/// Largest |f(a)-f(b)|/|a-b| seen over `samples` random pairs in [lo, hi],
/// varying the y argument over [ylo, yhi] when the expression uses y.
/// Used to cross-check declared Lipschitz bounds.
double sample_lipschitz(const FieldExpr& f, double lo, double hi, int samples,
                        double ylo = -1.0, double yhi = 1.0, unsigned seed = 12345,
                        bool vary_y = false);

} // namespace gexpect
