#include "gexpect/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

namespace gexpect {

namespace {

enum class Op {
    Const,
    X1,
    X2,
    Y,
    T,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Max,
    Min,
    Exp,
    Log,
    Abs,
    Pow,
    Sin,
    Cos,
};

} // namespace

struct FieldExpr::Node {
    Op op = Op::Const;
    double value = 0.0; // Const payload
    long ipow = 0;      // Pow exponent
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const FieldExpr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_const(double v) {
    auto n = std::make_shared<FieldExpr::Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

class Parser {
public:
    Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("end of input or operator");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError(pos_, expected, std::string(text_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = make(Op::Add, lhs, term());
            else if (eat('-'))
                lhs = make(Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (eat('*'))
                lhs = make(Op::Mul, lhs, factor());
            else if (eat('/'))
                lhs = make(Op::Div, lhs, factor());
            else
                return lhs;
        }
    }

    NodePtr factor() {
        if (eat('-'))
            return make(Op::Neg, atom());
        return atom();
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("number, variable, function or '('");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')'))
                fail("')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            return identifier();
        fail("number, variable, function or '('");
    }

    NodePtr number() {
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin)
            fail("number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_const(v);
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x" || name == "x1")
            return make(Op::X1);
        if (name == "x2")
            return make(Op::X2);
        if (name == "y")
            return make(Op::Y);
        if (name == "t")
            return make(Op::T);

        Op op;
        int arity;
        if (name == "max") {
            op = Op::Max;
            arity = 2;
        } else if (name == "min") {
            op = Op::Min;
            arity = 2;
        } else if (name == "exp") {
            op = Op::Exp;
            arity = 1;
        } else if (name == "log") {
            op = Op::Log;
            arity = 1;
        } else if (name == "abs") {
            op = Op::Abs;
            arity = 1;
        } else if (name == "pow") {
            op = Op::Pow;
            arity = 2;
        } else if (name == "sin") {
            op = Op::Sin;
            arity = 1;
        } else if (name == "cos") {
            op = Op::Cos;
            arity = 1;
        } else {
            pos_ = start;
            fail("variable or function name");
        }

        if (!eat('('))
            fail("'('");
        NodePtr a = expr();
        NodePtr b;
        if (arity == 2) {
            if (!eat(','))
                fail("','");
            if (op == Op::Pow) {
                skip_ws();
                std::size_t before = pos_;
                bool neg = eat('-');
                skip_ws();
                const char* begin = text_.data() + pos_;
                char* end = nullptr;
                long e = std::strtol(begin, &end, 10);
                if (end == begin || (end != begin && *end == '.')) {
                    pos_ = before;
                    fail("integer exponent");
                }
                pos_ += static_cast<std::size_t>(end - begin);
                if (!eat(')'))
                    fail("')'");
                auto n = std::make_shared<FieldExpr::Node>();
                n->op = Op::Pow;
                n->ipow = neg ? -e : e;
                n->a = a;
                return n;
            }
            b = expr();
        }
        if (!eat(')'))
            fail(arity == 2 ? "')'" : "',' or ')'");
        return make(op, a, b);
    }
};

double eval_node(const FieldExpr::Node& n, const EvalContext& ctx) {
    switch (n.op) {
    case Op::Const:
        return n.value;
    case Op::X1:
        if (!ctx.x1)
            throw EvalError("unbound variable x");
        return *ctx.x1;
    case Op::X2:
        if (!ctx.x2)
            throw EvalError("unbound variable x2");
        return *ctx.x2;
    case Op::Y:
        if (!ctx.y)
            throw EvalError("unbound variable y");
        return *ctx.y;
    case Op::T:
        if (!ctx.t)
            throw EvalError("unbound variable t");
        return *ctx.t;
    case Op::Add:
        return eval_node(*n.a, ctx) + eval_node(*n.b, ctx);
    case Op::Sub:
        return eval_node(*n.a, ctx) - eval_node(*n.b, ctx);
    case Op::Mul:
        return eval_node(*n.a, ctx) * eval_node(*n.b, ctx);
    case Op::Div: {
        double d = eval_node(*n.b, ctx);
        if (d == 0.0)
            throw EvalError("division by zero");
        return eval_node(*n.a, ctx) / d;
    }
    case Op::Neg:
        return -eval_node(*n.a, ctx);
    case Op::Max:
        return std::max(eval_node(*n.a, ctx), eval_node(*n.b, ctx));
    case Op::Min:
        return std::min(eval_node(*n.a, ctx), eval_node(*n.b, ctx));
    case Op::Exp:
        return std::exp(eval_node(*n.a, ctx));
    case Op::Log: {
        double v = eval_node(*n.a, ctx);
        if (v <= 0.0)
            throw EvalError("log of nonpositive value");
        return std::log(v);
    }
    case Op::Abs:
        return std::fabs(eval_node(*n.a, ctx));
    case Op::Pow: {
        double base = eval_node(*n.a, ctx);
        if (n.ipow < 0 && base == 0.0)
            throw EvalError("pow with zero base and negative exponent");
        return std::pow(base, static_cast<double>(n.ipow));
    }
    case Op::Sin:
        return std::sin(eval_node(*n.a, ctx));
    case Op::Cos:
        return std::cos(eval_node(*n.a, ctx));
    }
    throw EvalError("corrupt expression node");
}

int precedence(Op op) {
    switch (op) {
    case Op::Add:
    case Op::Sub:
        return 1;
    case Op::Mul:
    case Op::Div:
        return 2;
    case Op::Neg:
        return 3;
    default:
        return 4;
    }
}

void print_node(const FieldExpr::Node& n, std::ostream& os);

void print_child(const FieldExpr::Node& child, int parent_prec, bool is_rhs,
                 std::ostream& os) {
    int cp = precedence(child.op);
    // Right operands of -, / and unary - need parens at equal precedence.
    bool parens = cp < parent_prec || (cp == parent_prec && is_rhs);
    if (parens)
        os << '(';
    print_node(child, os);
    if (parens)
        os << ')';
}

void print_node(const FieldExpr::Node& n, std::ostream& os) {
    switch (n.op) {
    case Op::Const: {
        std::ostringstream tmp;
        tmp.precision(17);
        tmp << n.value;
        std::string s = tmp.str();
        if (n.value < 0)
            os << '(' << s << ')';
        else
            os << s;
        return;
    }
    case Op::X1:
        os << 'x';
        return;
    case Op::X2:
        os << "x2";
        return;
    case Op::Y:
        os << 'y';
        return;
    case Op::T:
        os << 't';
        return;
    case Op::Add:
        print_child(*n.a, 1, false, os);
        os << '+';
        print_child(*n.b, 1, true, os);
        return;
    case Op::Sub:
        print_child(*n.a, 1, false, os);
        os << '-';
        print_child(*n.b, 1, true, os);
        return;
    case Op::Mul:
        print_child(*n.a, 2, false, os);
        os << '*';
        print_child(*n.b, 2, true, os);
        return;
    case Op::Div:
        print_child(*n.a, 2, false, os);
        os << '/';
        print_child(*n.b, 2, true, os);
        return;
    case Op::Neg:
        os << '-';
        print_child(*n.a, 3, true, os);
        return;
    case Op::Max:
    case Op::Min: {
        os << (n.op == Op::Max ? "max(" : "min(");
        print_node(*n.a, os);
        os << ',';
        print_node(*n.b, os);
        os << ')';
        return;
    }
    case Op::Pow:
        os << "pow(";
        print_node(*n.a, os);
        os << ',' << n.ipow << ')';
        return;
    case Op::Exp:
    case Op::Log:
    case Op::Abs:
    case Op::Sin:
    case Op::Cos: {
        const char* name = n.op == Op::Exp   ? "exp"
                           : n.op == Op::Log ? "log"
                           : n.op == Op::Abs ? "abs"
                           : n.op == Op::Sin ? "sin"
                                             : "cos";
        os << name << '(';
        print_node(*n.a, os);
        os << ')';
        return;
    }
    }
}

bool uses_op(const FieldExpr::Node* n, Op op) {
    if (!n)
        return false;
    if (n->op == op)
        return true;
    return uses_op(n->a.get(), op) || uses_op(n->b.get(), op);
}

} // namespace

ParseError::ParseError(std::size_t position, std::string expected, const std::string& text)
    : std::runtime_error("parse error at position " + std::to_string(position) +
                         ": expected " + expected + " in \"" + text + "\""),
      position_(position),
      expected_(std::move(expected)) {}

FieldExpr FieldExpr::parse(std::string_view text) {
    return FieldExpr(Parser(text).run());
}

FieldExpr FieldExpr::constant(double c) {
    return FieldExpr(make_const(c));
}

double FieldExpr::eval(const EvalContext& ctx) const {
    if (!root_)
        throw EvalError("empty expression");
    return eval_node(*root_, ctx);
}

std::string FieldExpr::str() const {
    if (!root_)
        return "";
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

bool FieldExpr::uses_y() const { return uses_op(root_.get(), Op::Y); }
bool FieldExpr::uses_x2() const { return uses_op(root_.get(), Op::X2); }
bool FieldExpr::uses_t() const { return uses_op(root_.get(), Op::T); }

double sample_lipschitz(const FieldExpr& f, double lo, double hi, int samples,
                        double ylo, double yhi, unsigned seed, bool vary_y) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(lo, hi);
    std::uniform_real_distribution<double> uy(ylo, yhi);
    double worst = 0.0;
    bool in_y = vary_y && f.uses_y();
    for (int i = 0; i < samples; ++i) {
        EvalContext a, b;
        a.x1 = ux(rng);
        b.x1 = *a.x1;
        a.t = 0.0;
        b.t = 0.0;
        double da;
        if (in_y) {
            a.y = uy(rng);
            b.y = uy(rng);
            da = std::fabs(*a.y - *b.y);
        } else {
            b.x1 = ux(rng);
            if (f.uses_y()) {
                a.y = uy(rng);
                b.y = *a.y;
            }
            da = std::fabs(*a.x1 - *b.x1);
        }
        if (da < 1e-12)
            continue;
        double q = std::fabs(f.eval(a) - f.eval(b)) / da;
        worst = std::max(worst, q);
    }
    return worst;
}

} // namespace gexpect
