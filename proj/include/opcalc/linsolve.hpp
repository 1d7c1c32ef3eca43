#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opcalc/diffop.hpp"

namespace opcalc {

/// Sparse vector over the rationals: (row, value) pairs with distinct rows.
using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

/// Result of a sparse rational solve.
struct SparseSolution {
  bool consistent = false;
  /// Unknowns; free unknowns are zero. Filled when consistent.
  std::vector<Rational> x;
  /// Rows whose equation reduced to 0 = nonzero (up to a few), when inconsistent.
  std::vector<std::size_t> conflicting_rows;
  std::size_t rank = 0;
};

/// Solves sum_j x_j * columns[j] = rhs exactly. Elimination runs modulo 61-bit
/// primes; the rational solution is recovered by CRT and rational
/// reconstruction, then verified exactly against the original system.
SparseSolution solve_sparse(const std::vector<SparseColumn>& columns, const SparseColumn& rhs, std::size_t rows);

/// Same matrix, several right-hand sides.
std::vector<SparseSolution> solve_sparse_multi(const std::vector<SparseColumn>& columns,
                                               const std::vector<SparseColumn>& rhs, std::size_t rows);

/// Expansion of an operator in a basis of operators with coefficients
/// polynomial in the parameters.
struct Combination {
  bool exact = false;
  /// One coefficient per basis element.
  std::vector<Expr> coefficients;
  /// target - sum coefficients[j] * basis[j].
  DiffOp residual;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

/// Finds c_j in span{allowed[j]} (parameter monomials) with
/// target = sum_j c_j * basis[j]. When every basis element is free of
/// parameters, `allowed` is ignored and each parameter monomial of the target
/// is solved as a separate right-hand side. With `complex_coefficients` the
/// c_j range over Q(i) instead of Q.
Combination solve_combination(const std::vector<DiffOp>& basis, const DiffOp& target,
                              const std::vector<std::vector<Monomial>>& allowed, bool complex_coefficients = false);

/// All monomials in `params` with each exponent at most `max_degree`.
std::vector<Monomial> parameter_monomials(const std::vector<SymbolId>& params, unsigned max_degree);

}  // namespace opcalc
