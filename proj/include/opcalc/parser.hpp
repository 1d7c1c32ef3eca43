#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "opcalc/diffop.hpp"

namespace opcalc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Operator grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := uint | symbol | 'D[' var ']' | '(' expr ')'
/// Products are operator compositions read left to right; '/' divides by a
/// coefficient. Symbols: r u rho phi x y z beta mu p alpha E i n.
DiffOp parse_operator(std::string_view text, const SpecPtr& spec);

/// Same grammar without derivatives.
Expr parse_expr(std::string_view text, const AlgebraicContext* ctx = nullptr);

}  // namespace opcalc
