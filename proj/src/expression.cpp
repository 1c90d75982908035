#include "diractk/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "diractk/error.hpp"

namespace dtk {
namespace detail {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Fun };

struct ExprNode {
    Op op;
    double value = 0.0;                  // Const
    int fun = -1;                        // Fun
    std::shared_ptr<const ExprNode> lhs; // unary operand or left
    std::shared_ptr<const ExprNode> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

const char* kFunNames[] = {"sin", "cos", "tan", "tanh", "cosh", "sinh",
                           "sech", "exp", "log", "sqrt", "abs"};
constexpr int kNumFuns = 11;

double apply_fun(int f, double a) {
    switch (f) {
    case 0: return std::sin(a);
    case 1: return std::cos(a);
    case 2: return std::tan(a);
    case 3: return std::tanh(a);
    case 4: return std::cosh(a);
    case 5: return std::sinh(a);
    case 6: return 1.0 / std::cosh(a);
    case 7: return std::exp(a);
    case 8:
        if (a <= 0.0) throw EvalError("log of non-positive argument");
        return std::log(a);
    case 9:
        if (a < 0.0) throw EvalError("sqrt of negative argument");
        return std::sqrt(a);
    default: return std::fabs(a);
    }
}

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    // sum := term (('+'|'-') term)*
    NodePtr parse_sum() {
        NodePtr e = parse_term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                e = make(Op::Add, e, parse_term());
            else if (accept('-'))
                e = make(Op::Sub, e, parse_term());
            else
                return e;
        }
    }

    // term := factor (('*'|'/') factor)*
    NodePtr parse_term() {
        NodePtr e = parse_factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                e = make(Op::Mul, e, parse_factor());
            else if (accept('/'))
                e = make(Op::Div, e, parse_factor());
            else
                return e;
        }
    }

    // factor := ('-'|'+')* power
    NodePtr parse_factor() {
        skip_ws();
        if (accept('-'))
            return make(Op::Neg, parse_factor());
        if (accept('+'))
            return parse_factor();
        return parse_power();
    }

    // power := atom ('^' factor)?   (right-associative)
    NodePtr parse_power() {
        NodePtr base = parse_atom();
        skip_ws();
        if (accept('^'))
            return make(Op::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of expression", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_sum();
            skip_ws();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_name();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin)
            throw ParseError("invalid number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<ExprNode>();
        n->op = Op::Const;
        n->value = v;
        return n;
    }

    NodePtr parse_name() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x")
            return make(Op::Var);
        if (name == "pi") {
            auto n = std::make_shared<ExprNode>();
            n->op = Op::Const;
            n->value = M_PI;
            return n;
        }
        for (int f = 0; f < kNumFuns; ++f) {
            if (name == kFunNames[f]) {
                skip_ws();
                if (!accept('('))
                    throw ParseError("expected '(' after function name", pos_);
                NodePtr arg = parse_sum();
                skip_ws();
                if (!accept(')'))
                    throw ParseError("expected ')'", pos_);
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Fun;
                n->fun = f;
                n->lhs = arg;
                return n;
            }
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval_node(const ExprNode& n, double x) {
    switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return x;
    case Op::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Op::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Op::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Op::Div: {
        const double d = eval_node(*n.rhs, x);
        if (d == 0.0) throw EvalError("division by zero");
        return eval_node(*n.lhs, x) / d;
    }
    case Op::Pow: {
        const double b = eval_node(*n.lhs, x);
        const double e = eval_node(*n.rhs, x);
        const double r = std::pow(b, e);
        if (!std::isfinite(r)) throw EvalError("non-finite power result");
        return r;
    }
    case Op::Neg: return -eval_node(*n.lhs, x);
    case Op::Fun: return apply_fun(n.fun, eval_node(*n.lhs, x));
    }
    throw EvalError("corrupt expression tree");
}

} // namespace
} // namespace detail

Expression Expression::parse(const std::string& src) {
    if (src.empty())
        throw ParseError("empty expression", 0);
    detail::Parser p(src);
    return Expression(p.run(), src);
}

double Expression::eval(double x) const { return detail::eval_node(*root_, x); }

} // namespace dtk
