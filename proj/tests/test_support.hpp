#pragma once

#include <random>
#include <vector>

#include "opcalc/diffop.hpp"
#include "opcalc/parser.hpp"

namespace opcalc::testing {

inline const SpecPtr& ru_spec() {
  static SpecPtr s = VariableSpec::make("ru", {symbols::r, symbols::u}, {symbols::beta, symbols::mu, symbols::p});
  return s;
}

inline DiffOp op(std::string_view text, const SpecPtr& spec = ru_spec()) { return parse_operator(text, spec); }
inline Expr ex(std::string_view text, const AlgebraicContext* ctx = nullptr) { return parse_expr(text, ctx); }

/// Random polynomial in the given symbols with small integer coefficients.
inline MultiPoly random_poly(std::mt19937& rng, const std::vector<SymbolId>& syms, int max_terms, int max_deg) {
  std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg), coef(-5, 5);
  std::vector<MultiPoly::Term> terms;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    Monomial m;
    for (auto s : syms) m.set(s, static_cast<unsigned>(deg(rng)));
    terms.emplace_back(m, Scalar(coef(rng)));
  }
  return MultiPoly::from_terms(std::move(terms));
}

/// Random rational function with a small nonzero denominator.
inline Expr random_expr(std::mt19937& rng, const std::vector<SymbolId>& syms, bool fractions = true) {
  MultiPoly num = random_poly(rng, syms, 3, 2);
  if (!fractions || rng() % 3 == 0) return Expr(num);
  MultiPoly den = random_poly(rng, syms, 2, 1);
  if (den.is_zero()) den = MultiPoly(1);
  return Expr::fraction(num, den);
}

/// Random operator over (r, u) with polynomial coefficients.
inline DiffOp random_op(std::mt19937& rng, unsigned max_order, int max_terms = 3) {
  std::uniform_int_distribution<unsigned> k(0, max_order);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  DiffOp a(ru_spec());
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    unsigned kr = k(rng);
    unsigned ku = k(rng);
    if (kr + ku > max_order) ku = max_order - kr;
    DerivIndex idx;
    idx.set(0, kr);
    idx.set(1, ku);
    a.add_term(idx, Expr(random_poly(rng, {symbols::r, symbols::u, symbols::beta}, 2, 2)));
  }
  return a;
}

}  // namespace opcalc::testing
