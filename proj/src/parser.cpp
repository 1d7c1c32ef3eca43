#include "opcalc/parser.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace opcalc {

namespace {

constexpr std::array<std::string_view, 13> kSymbols = {"r",    "u",  "rho", "phi",   "x", "y", "z",
                                                      "beta", "mu", "p",   "alpha", "E", "n"};

// Either a plain coefficient or a genuine operator.
struct Value {
  Expr coef;
  std::optional<DiffOp> op;
};

class Parser {
 public:
  Parser(std::string_view text, SpecPtr spec, const AlgebraicContext* ctx)
      : text_(text), spec_(std::move(spec)), ctx_(ctx) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at = std::string_view::npos) const {
    if (at == std::string_view::npos) at = pos_;
    int line = 1, col = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  DiffOp as_op(const Value& v) const {
    return v.op ? *v.op : DiffOp::multiplication(spec_, v.coef);
  }

  Value add(Value a, const Value& b, bool minus) {
    if (!a.op && !b.op) {
      a.coef = minus ? a.coef - b.coef : a.coef + b.coef;
      return a;
    }
    DiffOp r = as_op(a);
    if (minus) {
      r -= as_op(b);
    } else {
      r += as_op(b);
    }
    return Value{Expr(), std::move(r)};
  }

  Value mul(const Value& a, const Value& b) {
    if (!a.op && !b.op) return Value{a.coef * b.coef, std::nullopt};
    if (!a.op) return Value{Expr(), a.coef * *b.op};
    return Value{Expr(), compose(*a.op, as_op(b))};
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = add(std::move(v), term(), false);
      } else if (accept('-')) {
        v = add(std::move(v), term(), true);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (accept('*')) {
        v = mul(v, factor());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = factor();
        if (v.op || d.op) fail("division applies to coefficients only", at);
        if (d.coef.is_zero()) fail("division by zero", at);
        v.coef /= d.coef;
      } else {
        return v;
      }
    }
  }

  Value factor() {
    if (accept('-')) {
      Value v = factor();
      if (v.op) {
        v.op = -*v.op;
      } else {
        v.coef = -v.coef;
      }
      return v;
    }
    Value base = atom();
    if (!accept('^')) return base;
    skip_space();
    unsigned long e = number();
    if (e > 64) fail("exponent too large");
    if (!base.op) return Value{base.coef.pow(static_cast<int>(e)), std::nullopt};
    DiffOp acc = DiffOp::identity(spec_);
    for (unsigned long k = 0; k < e; ++k) acc = compose(acc, *base.op);
    return Value{Expr(), std::move(acc)};
  }

  unsigned long number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 18) fail("integer literal too long", start);
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  SymbolId lookup(const std::string& name, std::size_t at) const {
    for (auto s : kSymbols) {
      if (s == name) {
        SymbolId id = 0;
        symbols::find(name, id);
        return id;
      }
    }
    fail("unknown symbol '" + name + "'", at);
  }

  Value atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer z(std::string(text_.substr(start, pos_ - start)));
      return Value{Expr(Scalar(Rational(z))), std::nullopt};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::string name = identifier();
      if (name == "D" && pos_ < text_.size() && text_[pos_] == '[') {
        ++pos_;
        skip_space();
        std::size_t vat = pos_;
        std::string var = identifier();
        if (var.empty()) fail("expected a variable name", vat);
        SymbolId id = lookup(var, vat);
        if (!spec_) fail("derivatives are not allowed here", start);
        if (spec_->index_of(id) < 0) fail("'" + var + "' is not a space variable", vat);
        expect(']');
        return Value{Expr(), DiffOp::derivative(spec_, id)};
      }
      if (name == "i") return Value{Expr(Scalar::i()), std::nullopt};
      return Value{Expr::symbol(lookup(name, start), ctx_), std::nullopt};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  SpecPtr spec_;
  const AlgebraicContext* ctx_;
};

}  // namespace

DiffOp parse_operator(std::string_view text, const SpecPtr& spec) {
  Parser p(text, spec, spec->context());
  Value v = p.parse();
  return v.op ? *v.op : DiffOp::multiplication(spec, v.coef);
}

Expr parse_expr(std::string_view text, const AlgebraicContext* ctx) {
  Parser p(text, nullptr, ctx);
  return p.parse().coef;
}

}  // namespace opcalc
