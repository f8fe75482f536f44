#include "fiolab/phase_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace fiolab {

struct PhaseExpr::Node {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Abs, Sqrt, Norm1, Norm2 };
    Op op;
    double value = 0.0;
    int var = 0;  // 0:x1 1:x2 2:xi1 3:xi2
    std::shared_ptr<const Node> a, b;

    double eval(const Vec& x, const Vec& xi) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var:
                switch (var) {
                    case 0: return x[0];
                    case 1: return x[1];
                    case 2: return xi[0];
                    default: return xi[1];
                }
            case Op::Add: return a->eval(x, xi) + b->eval(x, xi);
            case Op::Sub: return a->eval(x, xi) - b->eval(x, xi);
            case Op::Mul: return a->eval(x, xi) * b->eval(x, xi);
            case Op::Div: return a->eval(x, xi) / b->eval(x, xi);
            case Op::Neg: return -a->eval(x, xi);
            case Op::Abs: return std::abs(a->eval(x, xi));
            case Op::Sqrt: return std::sqrt(a->eval(x, xi));
            case Op::Norm1: return std::abs(a->eval(x, xi));
            case Op::Norm2: return std::hypot(a->eval(x, xi), b->eval(x, xi));
        }
        return 0.0;
    }
};

namespace {

using Node = PhaseExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ParameterError("phase expression: " + why + " at offset " + std::to_string(pos) +
                             " in '" + s + "'");
    }

    NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr expr() {
        NodePtr left = term();
        while (true) {
            if (eat('+'))
                left = make(Node::Op::Add, left, term());
            else if (eat('-'))
                left = make(Node::Op::Sub, left, term());
            else
                return left;
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        while (true) {
            if (eat('*'))
                left = make(Node::Op::Mul, left, factor());
            else if (eat('/'))
                left = make(Node::Op::Div, left, factor());
            else
                return left;
        }
    }

    NodePtr factor() {
        if (eat('-')) return make(Node::Op::Neg, factor());
        return primary();
    }

    NodePtr primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            double v = std::strtod(s.c_str() + pos, &end);
            pos = static_cast<std::size_t>(end - s.c_str());
            auto n = std::make_shared<Node>();
            n->op = Node::Op::Const;
            n->value = v;
            return n;
        }
        if (c == '(') {
            ++pos;
            NodePtr inner = expr();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "x1" || name == "x2" || name == "xi1" || name == "xi2") {
                auto n = std::make_shared<Node>();
                n->op = Node::Op::Var;
                n->var = name == "x1" ? 0 : name == "x2" ? 1 : name == "xi1" ? 2 : 3;
                return n;
            }
            if (name == "abs" || name == "sqrt" || name == "norm") {
                if (!eat('(')) fail("expected '(' after " + name);
                NodePtr first = expr();
                NodePtr second;
                if (eat(',')) second = expr();
                if (!eat(')')) fail("missing ')' after " + name + " arguments");
                if (name == "abs") {
                    if (second) fail("abs takes one argument");
                    return make(Node::Op::Abs, first);
                }
                if (name == "sqrt") {
                    if (second) fail("sqrt takes one argument");
                    return make(Node::Op::Sqrt, first);
                }
                return second ? make(Node::Op::Norm2, first, second)
                              : make(Node::Op::Norm1, first);
            }
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected character");
    }
};

}  // namespace

PhaseExpr::PhaseExpr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

PhaseExpr PhaseExpr::parse(const std::string& text) {
    Parser p(text);
    NodePtr root = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return PhaseExpr(std::move(root), text);
}

double PhaseExpr::eval(const Vec& x, const Vec& xi) const { return root_->eval(x, xi); }

}  // namespace fiolab
