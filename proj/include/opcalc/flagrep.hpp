#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opcalc/diffop.hpp"

namespace opcalc {

/// Monomial basis r^a u^b, a + 2b <= n, of the flag space P_n. Ordered by
/// weight a + 2b, then by decreasing power of r.
class MonomialBasis {
 public:
  struct Element {
    unsigned a;
    unsigned b;
    unsigned weight() const { return a + 2 * b; }
  };

  explicit MonomialBasis(unsigned n);
  static std::size_t dimension(unsigned n);

  unsigned n() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const Element& operator[](std::size_t k) const { return elements_[k]; }
  const std::vector<Element>& elements() const { return elements_; }
  /// Position of r^a u^b, or -1.
  int index_of(unsigned a, unsigned b) const;
  Expr polynomial(std::size_t k) const;
  std::string label(std::size_t k) const;

 private:
  unsigned n_;
  std::vector<Element> elements_;
};

struct InvarianceResult {
  bool invariant = true;
  /// First basis monomial whose image leaves the space, with that image.
  std::optional<std::pair<Expr, Expr>> witness;
};

class InvarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks apply(A, m) in P_n for every basis monomial. Throws
/// std::invalid_argument when A has non-polynomial coefficients.
InvarianceResult is_invariant(const DiffOp& a, unsigned n);

/// Exact matrix of an operator on P_n: apply(A, e_j) = sum_i M(i, j) e_i.
class OperatorMatrix {
 public:
  OperatorMatrix(MonomialBasis basis, std::vector<std::vector<MultiPoly>> entries)
      : basis_(std::move(basis)), entries_(std::move(entries)) {}
  static OperatorMatrix identity(unsigned n);

  const MonomialBasis& basis() const { return basis_; }
  std::size_t size() const { return entries_.size(); }
  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  MultiPoly& operator()(std::size_t i, std::size_t j) { return entries_[i][j]; }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) { return a.entries_ == b.entries_; }
  bool is_upper_triangular() const;

 private:
  MonomialBasis basis_;
  std::vector<std::vector<MultiPoly>> entries_;
};

/// Throws InvarianceError (with the witness in the message) when A does not
/// preserve P_n.
OperatorMatrix matrix_of(const DiffOp& a, unsigned n);

/// det(lambda*I - M) by fraction-free Bareiss elimination, one call per
/// diagonal block of the block-triangular structure. Polynomial in lambda.
MultiPoly char_poly(const OperatorMatrix& m);

/// Determinant by Bareiss elimination with exact division.
MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m);

struct SpectralReport {
  unsigned n = 0;
  /// (eigenvalue, multiplicity), one entry per weight k = 0..n.
  std::vector<std::pair<Expr, unsigned>> expected;
  MultiPoly char_poly;
  MultiPoly expected_poly;
  bool pass = false;
};

/// Compares char_poly(matrix_of(h, n)) with prod_k (lambda - eigenvalue(k))^g_k,
/// g_k the number of basis monomials of weight k.
SpectralReport verify_spectrum(const DiffOp& h, unsigned n, const std::function<Expr(unsigned)>& eigenvalue);

/// Kernel of matrix_of(h, n) - eigenvalue at a rational parameter point.
/// Throws std::domain_error when the eigenvalue collides with another weight's
/// eigenvalue there.
std::vector<Expr> eigenpolynomials(const DiffOp& h, unsigned n, unsigned k,
                                   const std::function<Expr(unsigned)>& eigenvalue,
                                   const std::map<SymbolId, Expr>& point);

/// True iff apply(A - B, m) = 0 for every monomial in the space variables with
/// each exponent at most `bound`. Conclusive once bound >= order(A - B).
bool equality_oracle(const DiffOp& a, const DiffOp& b, unsigned bound);

}  // namespace opcalc
