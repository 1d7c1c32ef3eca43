#include "opcalc/flagrep.hpp"

#include <algorithm>

namespace opcalc {

namespace sym = symbols;

MonomialBasis::MonomialBasis(unsigned n) : n_(n) {
  for (unsigned w = 0; w <= n; ++w)
    for (unsigned b = 0; 2 * b <= w; ++b) elements_.push_back({w - 2 * b, b});
}

std::size_t MonomialBasis::dimension(unsigned n) {
  std::size_t d = 0;
  for (unsigned k = 0; k <= n; ++k) d += k / 2 + 1;
  return d;
}

int MonomialBasis::index_of(unsigned a, unsigned b) const {
  unsigned w = a + 2 * b;
  if (w > n_) return -1;
  // Elements of weight w start after all lighter ones.
  std::size_t offset = dimension(w) - (w / 2 + 1);
  return static_cast<int>(offset + b);
}

Expr MonomialBasis::polynomial(std::size_t k) const {
  Monomial m;
  m.set(sym::r, elements_[k].a);
  m.set(sym::u, elements_[k].b);
  return Expr(MultiPoly::term(m, Scalar(1)));
}

std::string MonomialBasis::label(std::size_t k) const {
  Monomial m;
  m.set(sym::r, elements_[k].a);
  m.set(sym::u, elements_[k].b);
  return m.is_one() ? "1" : m.str();
}

namespace {

void require_polynomial(const DiffOp& a) {
  for (const auto& [idx, c] : a.terms())
    if (!c.is_polynomial())
      throw std::invalid_argument("operator has a non-polynomial coefficient " + c.str());
  if (a.spec()->vars() != std::vector<SymbolId>{sym::r, sym::u})
    throw std::invalid_argument("flag representations need an operator over (r, u)");
}

// Splits a polynomial image into coordinates along the basis; returns false
// when a monomial falls outside P_n.
bool coordinates(const MultiPoly& image, const MonomialBasis& basis, std::vector<std::vector<MultiPoly::Term>>& rows) {
  for (const auto& [m, c] : image.terms()) {
    int i = basis.index_of(m[sym::r], m[sym::u]);
    if (i < 0) return false;
    Monomial rest = m;
    rest.set(sym::r, 0);
    rest.set(sym::u, 0);
    rows[static_cast<std::size_t>(i)].emplace_back(rest, c);
  }
  return true;
}

}  // namespace

InvarianceResult is_invariant(const DiffOp& a, unsigned n) {
  require_polynomial(a);
  MonomialBasis basis(n);
  InvarianceResult res;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Expr image = apply(a, basis.polynomial(j));
    for (const auto& [m, c] : image.num().terms()) {
      if (basis.index_of(m[sym::r], m[sym::u]) < 0) {
        res.invariant = false;
        res.witness = std::make_pair(basis.polynomial(j), image);
        return res;
      }
    }
  }
  return res;
}

OperatorMatrix OperatorMatrix::identity(unsigned n) {
  MonomialBasis basis(n);
  std::vector<std::vector<MultiPoly>> e(basis.size(), std::vector<MultiPoly>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) e[i][i] = MultiPoly(1);
  return OperatorMatrix(std::move(basis), std::move(e));
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  std::size_t d = a.size();
  std::vector<std::vector<MultiPoly>> e(d, std::vector<MultiPoly>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a.entries_[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!b.entries_[k][j].is_zero()) e[i][j] += a.entries_[i][k] * b.entries_[k][j];
    }
  return OperatorMatrix(a.basis_, std::move(e));
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out.entries_[i][j] -= b.entries_[i][j];
  return out;
}

bool OperatorMatrix::is_upper_triangular() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!entries_[i][j].is_zero()) return false;
  return true;
}

OperatorMatrix matrix_of(const DiffOp& a, unsigned n) {
  require_polynomial(a);
  MonomialBasis basis(n);
  std::size_t d = basis.size();
  std::vector<std::vector<MultiPoly>> e(d, std::vector<MultiPoly>(d));
  for (std::size_t j = 0; j < d; ++j) {
    Expr image = apply(a, basis.polynomial(j));
    std::vector<std::vector<MultiPoly::Term>> rows(d);
    if (!coordinates(image.num(), basis, rows))
      throw InvarianceError("operator does not preserve P_" + std::to_string(n) + ": " + basis.label(j) + " -> " +
                            image.str());
    for (std::size_t i = 0; i < d; ++i) e[i][j] = MultiPoly::from_terms(std::move(rows[i]));
  }
  return OperatorMatrix(std::move(basis), std::move(e));
}

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m) {
  std::size_t d = m.size();
  if (d == 0) return MultiPoly(1);
  MultiPoly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < d && m[piv][k].is_zero()) ++piv;
      if (piv == d) return MultiPoly();
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        MultiPoly t = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) t -= m[i][k] * m[k][j];
        if (!prev.is_one()) {
          auto q = t.divide_exact(prev);
          if (!q) throw std::logic_error("Bareiss division was not exact");
          t = std::move(*q);
        }
        m[i][j] = std::move(t);
      }
      m[i][k] = MultiPoly();
    }
    prev = m[k][k];
  }
  MultiPoly det = m[d - 1][d - 1];
  return negate ? -det : det;
}

MultiPoly char_poly(const OperatorMatrix& m) {
  std::size_t d = m.size();
  MultiPoly lambda = MultiPoly::var(sym::lambda);
  // low[j]: last row with a nonzero entry in column j.
  std::vector<std::size_t> low(d, 0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i)
      if (!m(i, j).is_zero()) low[j] = i;
  MultiPoly result(1);
  std::size_t start = 0;
  while (start < d) {
    std::size_t end = start + 1;
    std::size_t reach = low[start];
    for (std::size_t j = start; j < end; ++j) {
      reach = std::max(reach, low[j]);
      if (reach >= end) end = reach + 1;
    }
    std::vector<std::vector<MultiPoly>> block(end - start, std::vector<MultiPoly>(end - start));
    for (std::size_t i = start; i < end; ++i)
      for (std::size_t j = start; j < end; ++j) {
        MultiPoly e = -m(i, j);
        if (i == j) e += lambda;
        block[i - start][j - start] = std::move(e);
      }
    result = result * bareiss_determinant(std::move(block));
    start = end;
  }
  return result;
}

SpectralReport verify_spectrum(const DiffOp& h, unsigned n, const std::function<Expr(unsigned)>& eigenvalue) {
  SpectralReport rep;
  rep.n = n;
  OperatorMatrix m = matrix_of(h, n);
  rep.char_poly = char_poly(m);
  MultiPoly lambda = MultiPoly::var(sym::lambda);
  MultiPoly expected(1);
  for (unsigned k = 0; k <= n; ++k) {
    Expr ev = eigenvalue(k);
    unsigned g = k / 2 + 1;
    rep.expected.emplace_back(ev, g);
    expected = expected * (lambda - ev.num()).pow(g);
  }
  rep.expected_poly = expected;
  rep.pass = rep.char_poly == expected;
  return rep;
}

namespace {

// Reduced row echelon kernel basis of a dense scalar matrix.
std::vector<std::vector<Scalar>> kernel(std::vector<std::vector<Scalar>> a) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Scalar inv = Scalar(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Scalar f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Scalar> v(cols);
    v[free] = Scalar(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar evaluate(const Expr& e, const std::map<SymbolId, Expr>& point) {
  Expr v = e.substitute(point);
  if (!v.is_constant()) throw std::invalid_argument("parameter point leaves " + v.str() + " symbolic");
  return v.constant_value();
}

}  // namespace

std::vector<Expr> eigenpolynomials(const DiffOp& h, unsigned n, unsigned k,
                                   const std::function<Expr(unsigned)>& eigenvalue,
                                   const std::map<SymbolId, Expr>& point) {
  if (k > n) throw std::invalid_argument("weight exceeds the flag level");
  Scalar target = evaluate(eigenvalue(k), point);
  for (unsigned j = 0; j <= n; ++j)
    if (j != k && evaluate(eigenvalue(j), point) == target)
      throw std::domain_error("eigenvalues of weights " + std::to_string(j) + " and " + std::to_string(k) +
                              " collide at this parameter point; choose another");
  DiffOp hp = h.substitute(point);
  OperatorMatrix m = matrix_of(hp, n);
  std::size_t d = m.size();
  std::vector<std::vector<Scalar>> a(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (!m(i, j).is_constant()) throw std::invalid_argument("parameter point leaves matrix entries symbolic");
      a[i][j] = m(i, j).constant_term();
      if (i == j) a[i][j] -= target;
    }
  std::vector<Expr> out;
  for (auto& v : kernel(std::move(a))) {
    // Normalize so the heaviest basis component is 1.
    std::size_t last = d;
    while (last > 0 && v[last - 1].is_zero()) --last;
    Scalar scale = Scalar(1) / v[last - 1];
    Expr p;
    for (std::size_t i = 0; i < d; ++i)
      if (!v[i].is_zero()) p += Expr(v[i] * scale) * m.basis().polynomial(i);
    if (!(apply(hp, p) == Expr(target) * p)) throw std::logic_error("kernel vector failed verification");
    out.push_back(std::move(p));
  }
  return out;
}

bool equality_oracle(const DiffOp& a, const DiffOp& b, unsigned bound) {
  DiffOp d = a - b;
  const auto& vars = a.spec()->vars();
  std::vector<unsigned> e(vars.size(), 0);
  for (;;) {
    Monomial m;
    for (std::size_t k = 0; k < vars.size(); ++k) m.set(vars[k], e[k]);
    if (!apply(d, Expr(MultiPoly::term(m, Scalar(1)), a.spec()->context())).is_zero()) return false;
    std::size_t k = 0;
    while (k < e.size() && e[k] == bound) e[k++] = 0;
    if (k == e.size()) return true;
    ++e[k];
  }
}

}  // namespace opcalc
