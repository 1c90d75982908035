#pragma once

#include <memory>
#include <string>

namespace dtk {

namespace detail {
struct ExprNode;
}

// A parsed closed-form expression of one variable x.
// Grammar: literals, x, + - * / ^, parentheses, unary minus, and the functions
// sin cos tan tanh cosh sinh sech exp log sqrt abs. ^ is right-associative.
class Expression {
public:
    static Expression parse(const std::string& src);

    double eval(double x) const;
    const std::string& source() const { return src_; }

private:
    explicit Expression(std::shared_ptr<const detail::ExprNode> root, std::string src)
        : root_(std::move(root)), src_(std::move(src)) {}
    std::shared_ptr<const detail::ExprNode> root_;
    std::string src_;
};

} // namespace dtk
