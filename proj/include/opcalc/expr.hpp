#pragma once

#include <map>
#include <string>

#include "opcalc/context.hpp"
#include "opcalc/multipoly.hpp"

namespace opcalc {

/// Reduced rational function num/den over the Gaussian rationals, taken modulo
/// the square relations of its algebraic context.
///
/// Canonical form: den has rational coefficients, is free of rewritten symbols
/// and is monic; num is in relation normal form; gcd(num, den) = 1. Two Exprs
/// are equal as functions iff their (num, den) pairs coincide.
class Expr {
 public:
  Expr() : den_(1) {}
  Expr(const Scalar& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Scalar(c)) {}            // NOLINT
  explicit Expr(const MultiPoly& num, const AlgebraicContext* ctx = nullptr);

  /// num/den brought to canonical form. Throws std::domain_error on a zero
  /// denominator (after relation reduction).
  static Expr fraction(const MultiPoly& num, const MultiPoly& den, const AlgebraicContext* ctx = nullptr);
  static Expr symbol(SymbolId s, const AlgebraicContext* ctx = nullptr);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const AlgebraicContext* context() const { return ctx_; }
  Expr with_context(const AlgebraicContext* ctx) const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  bool is_real() const { return num_.is_real(); }
  Scalar constant_value() const { return num_.constant_term(); }
  bool contains(SymbolId s) const { return num_.contains(s) || den_.contains(s); }
  std::uint32_t symbol_mask() const { return num_.symbol_mask() | den_.symbol_mask(); }

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, const Expr& b) { return a *= b; }
  friend Expr operator/(Expr a, const Expr& b) { return a /= b; }
  Expr pow(int e) const;

  friend bool operator==(const Expr& a, const Expr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Derivative along a base variable, using the context's gradient tables for
  /// dependent symbols. Throws std::invalid_argument when `v` is not a base
  /// variable of a non-null context.
  Expr derivative(SymbolId v) const;

  /// Simultaneous substitution; the result lives in `target` (defaults to this
  /// Expr's context).
  Expr substitute(const std::map<SymbolId, Expr>& values, const AlgebraicContext* target = nullptr) const;
  Expr substitute(SymbolId s, const Expr& value) const { return substitute(std::map<SymbolId, Expr>{{s, value}}); }

  Expr conj() const;
  Expr real_part() const;
  Expr imag_part() const;

  /// "num" or "(num)/(den)".
  std::string str() const;

 private:
  Expr(MultiPoly num, MultiPoly den, const AlgebraicContext* ctx, int /*raw*/)
      : num_(std::move(num)), den_(std::move(den)), ctx_(ctx) {}
  // Divides out gcd(num, den) and makes den monic. Assumes den is already
  // rational and free of rewritten symbols, and num is reduced.
  void cancel();
  static const AlgebraicContext* merge_context(const AlgebraicContext* a, const AlgebraicContext* b);

  MultiPoly num_;
  MultiPoly den_;
  const AlgebraicContext* ctx_ = nullptr;
};

}  // namespace opcalc
