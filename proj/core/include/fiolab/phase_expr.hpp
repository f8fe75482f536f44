// Tiny expression grammar for user-supplied phases and amplitudes:
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := ('-')? primary
//   primary := number | ident | func '(' expr (',' expr)? ')' | '(' expr ')'
// Identifiers: x1, x2, xi1, xi2.  Functions: abs, sqrt, norm (norm takes one
// or two arguments and is the Euclidean length).
#pragma once

#include <memory>
#include <string>

#include "fiolab/grid.hpp"

namespace fiolab {

class PhaseExpr {
  public:
    static PhaseExpr parse(const std::string& text);  // throws ParameterError on bad syntax
    double eval(const Vec& x, const Vec& xi) const;
    const std::string& text() const { return text_; }

    PhaseExpr(const PhaseExpr&) = default;
    PhaseExpr& operator=(const PhaseExpr&) = default;

    struct Node;  // exposed for the parser implementation

  private:
    PhaseExpr(std::shared_ptr<const Node> root, std::string text);
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace fiolab
