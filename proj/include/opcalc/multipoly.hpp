#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/monomial.hpp"
#include "opcalc/scalar.hpp"

namespace opcalc {

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Terms are stored in strictly decreasing graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
class MultiPoly {
 public:
  using Term = std::pair<Monomial, Scalar>;

  MultiPoly() = default;
  MultiPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(Scalar(c)) {}  // NOLINT

  static MultiPoly var(SymbolId s, unsigned e = 1);
  static MultiPoly term(const Monomial& m, const Scalar& c);
  /// Sorts, merges equal monomials and drops zeros.
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second.is_one(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_real() const;

  const Term& leading() const { return terms_.front(); }
  Scalar constant_term() const;
  Scalar coefficient(const Monomial& m) const;

  unsigned degree_in(SymbolId s) const;
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }
  bool contains(SymbolId s) const { return degree_in(s) > 0; }
  /// Bit i set iff symbol i occurs.
  std::uint32_t symbol_mask() const;
  /// Greatest monomial dividing every term (1 for the zero polynomial).
  Monomial monomial_content() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Scalar& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
  friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }
  MultiPoly mul_monomial(const Monomial& m) const;
  /// Caller guarantees m divides every term.
  MultiPoly div_monomial(const Monomial& m) const;
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  /// Formal partial derivative in one symbol.
  MultiPoly derivative(SymbolId s) const;
  MultiPoly conj() const;
  MultiPoly real_part() const;
  MultiPoly imag_part() const;

  /// Quotient when b divides *this exactly, otherwise nullopt.
  std::optional<MultiPoly> divide_exact(const MultiPoly& b) const;

  /// Coefficients in powers of s: result[k] multiplies s^k.
  std::vector<MultiPoly> coefficients_in(SymbolId s) const;
  static MultiPoly from_coefficients(SymbolId s, const std::vector<MultiPoly>& coeffs);

  MultiPoly substitute(SymbolId s, const MultiPoly& value) const;
  MultiPoly substitute(const std::map<SymbolId, MultiPoly>& values) const;

  /// Divides by the leading coefficient (zero stays zero).
  MultiPoly monic() const;

  /// gcd over Q[symbols] of polynomials with real coefficients, monic.
  static MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace opcalc
