#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/linsolve.hpp"
#include "opcalc/report.hpp"

namespace opcalc::coulomb2d {

/// (r, u) with parameters beta, mu, p.
const SpecPtr& ru_spec();
/// (r, rho) with parameters beta, mu, p.
const SpecPtr& rrho_spec();
/// (r, rho, phi) with parameters beta, mu, p, E.
const SpecPtr& cylinder_spec();

/// Gauge-rotated operator in (r, rho), as transcribed.
DiffOp h_operator();
/// Algebraic form in (r, u).
DiffOp h_a();
DiffOp l_a();
/// Twice b_a, term by term as transcribed; b_a() is half of it.
DiffOp two_b_a();
DiffOp b_a();

/// h_a, l_a, b_a and c = [b_a, l_a], computed once.
struct NamedOperators {
  DiffOp h_a;
  DiffOp l_a;
  DiffOp b_a;
  DiffOp c;
};
const NamedOperators& named();

/// Eigenvalue of h_a on weight k: beta (k + 1 + p + mu).
Expr alpha(unsigned k);

/// Displayed order-5 and order-4 coefficients of c, keyed by derivative
/// index over (r, u).
std::vector<std::pair<DerivIndex, Expr>> c_leading_terms();

/// The 3D Laplacian written in (r, rho, phi).
DiffOp laplacian_cylindrical();

/// Gauge data of rho^mu e^{-beta r} z^p at a literal parity, over (r, rho).
GaugeData pipeline_gauge(int parity, bool with_exponential = true);

/// K -> h at a literal parity: returns the projected operator over (r, rho).
DiffOp derive_h(int parity, bool with_exponential = true);

/// Right-hand side of [c, l_a] (which = 'l') or [c, b_a] (which = 'b') with
/// products composed in the printed order.
DiffOp cubic_rhs_as_printed(char which);

/// Ordered monomial h^a l^b b^c c^d.
struct CubicMonomial {
  unsigned h = 0, l = 0, b = 0, c = 0;
  unsigned degree() const { return h + l + b + c; }
  unsigned order() const { return 2 * h + 2 * l + 4 * b + 5 * c; }
  /// Weight with beta counted as -1 (h: -1, l: 0, b: -2, c: -2).
  int weight() const { return -static_cast<int>(h) - 2 * static_cast<int>(b + c); }
  std::string str() const;
};

struct CubicDecomposition {
  std::vector<CubicMonomial> monomials;
  Combination combination;
  /// Monomial string -> coefficient string, nonzero entries only.
  std::vector<std::pair<std::string, std::string>> table;
};

/// Solves for [c, target] as a combination of ordered monomials of degree
/// <= max_degree whose order does not exceed that of the commutator. Beta
/// powers are fixed by weight; mu and p appear with degree <= param_degree.
/// A literal `parity` substitutes p everywhere first.
CubicDecomposition decompose_cubic(char which, unsigned max_degree = 3, unsigned param_degree = 4,
                                   std::optional<int> parity = std::nullopt);

/// Coefficients read off the printed right-hand side, keyed like the table.
std::vector<std::pair<std::string, Expr>> printed_cubic_coefficients(char which);

// Checks.
CheckReport check_pipeline(int parity, const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_relate_h_ha(const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_c_leading(const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_integrals(const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_cubic(char which, const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_spectrum(unsigned max_n = 8, const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_flag_invariance(unsigned max_n = 8, const std::map<SymbolId, Expr>& bindings = {});

}  // namespace opcalc::coulomb2d
