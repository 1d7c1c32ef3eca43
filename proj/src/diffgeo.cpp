#include "opcalc/diffgeo.hpp"

#include <stdexcept>

namespace opcalc {

CoMetric cometric_from_embedding(const std::vector<SymbolId>& names, const std::vector<Expr>& coords,
                                 const AlgebraicContext* ambient) {
  if (names.size() != coords.size()) throw std::invalid_argument("one name per coordinate");
  if (!ambient) throw std::invalid_argument("embedding needs an ambient context");
  std::size_t n = coords.size();
  std::vector<std::vector<Expr>> grad(n);
  for (std::size_t k = 0; k < n; ++k)
    for (auto v : ambient->base()) grad[k].push_back(coords[k].with_context(ambient).derivative(v));
  std::uint32_t allowed = 0;
  for (auto s : names) allowed |= 1u << s;
  CoMetric g{names, ExprMatrix(n, std::vector<Expr>(n))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Expr dot;
      for (std::size_t k = 0; k < ambient->base().size(); ++k) dot += grad[a][k] * grad[b][k];
      if (dot.symbol_mask() & ~allowed)
        throw std::invalid_argument("cometric entry " + dot.str() + " is not a function of the coordinates");
      g.entries[a][b] = g.entries[b][a] = dot.with_context(nullptr);
    }
  if (invert_and_det(g.entries).determinant.is_zero()) throw std::domain_error("degenerate coordinate gradients");
  return g;
}

Inversion invert_and_det(const ExprMatrix& input) {
  std::size_t n = input.size();
  ExprMatrix m = input;
  ExprMatrix inv(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expr(1);
  Expr det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(inv[piv], inv[col]);
      det = -det;
    }
    det *= m[col][col];
    Expr scale = Expr(1) / m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] *= scale;
      inv[col][k] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Expr f = m[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return {inv, det};
}

DiffOp laplace_beltrami(const CoMetric& g, const SpecPtr& spec) {
  std::size_t n = g.coords.size();
  if (spec->vars() != g.coords) throw std::invalid_argument("spec variables must be the cometric coordinates");
  const AlgebraicContext* ctx = spec->context();
  ExprMatrix e(n, std::vector<Expr>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) e[a][b] = g.entries[a][b].with_context(ctx);
  Expr det = invert_and_det(e).determinant;
  // d_mu log sqrt(det g_lower) = -(1/2) d_mu log det(g^upper).
  std::vector<Expr> half_log(n);
  for (std::size_t m = 0; m < n; ++m) half_log[m] = -det.derivative(g.coords[m]) / (Expr(2) * det);
  DiffOp out(spec);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      DerivIndex idx = DerivIndex::unit(a);
      idx = idx + DerivIndex::unit(b);
      out.add_term(idx, e[a][b]);
    }
  for (std::size_t nu = 0; nu < n; ++nu) {
    Expr c;
    for (std::size_t m = 0; m < n; ++m) c += e[m][nu].derivative(g.coords[m]) + half_log[m] * e[m][nu];
    out.add_term(DerivIndex::unit(nu), c);
  }
  return out;
}

Expr scalar_curvature(const ExprMatrix& metric, const std::vector<SymbolId>& coords) {
  std::size_t n = coords.size();
  ExprMatrix ginv = invert_and_det(metric).inverse;
  // d[l][i][j] = d_l g_ij
  std::vector<ExprMatrix> d(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[l][i][j] = metric[i][j].derivative(coords[l]);
  // gamma[k][i][j] = Gamma^k_ij
  std::vector<ExprMatrix> gamma(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Expr s;
        for (std::size_t l = 0; l < n; ++l) {
          if (ginv[k][l].is_zero()) continue;
          s += ginv[k][l] * (d[i][j][l] + d[j][i][l] - d[l][i][j]);
        }
        gamma[k][i][j] = s / Expr(2);
      }
  // Ricci_{sn} = R^r_{s r n} = d_r Gamma^r_{ns} - d_n Gamma^r_{rs}
  //            + Gamma^r_{rl} Gamma^l_{ns} - Gamma^r_{nl} Gamma^l_{rs}
  Expr scalar;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t nn = 0; nn < n; ++nn) {
      if (ginv[s][nn].is_zero()) continue;
      Expr ric;
      for (std::size_t r = 0; r < n; ++r) {
        ric += gamma[r][nn][s].derivative(coords[r]) - gamma[r][r][s].derivative(coords[nn]);
        for (std::size_t l = 0; l < n; ++l)
          ric += gamma[r][r][l] * gamma[l][nn][s] - gamma[r][nn][l] * gamma[l][r][s];
      }
      scalar += ginv[s][nn] * ric;
    }
  return scalar;
}

Expr brioschi_curvature(const ExprMatrix& metric, const std::vector<SymbolId>& coords) {
  if (coords.size() != 2) throw std::invalid_argument("Brioschi formula is two-dimensional");
  SymbolId u = coords[0], v = coords[1];
  const Expr& E = metric[0][0];
  const Expr& F = metric[0][1];
  const Expr& G = metric[1][1];
  Expr half(Scalar(Rational(1, 2)));
  auto det3 = [](const ExprMatrix& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  Expr Eu = E.derivative(u), Ev = E.derivative(v), Fu = F.derivative(u), Fv = F.derivative(v);
  Expr Gu = G.derivative(u), Gv = G.derivative(v);
  Expr corner = -half * E.derivative(v).derivative(v) + F.derivative(u).derivative(v) -
                half * G.derivative(u).derivative(u);
  ExprMatrix a{{corner, half * Eu, Fu - half * Ev}, {Fv - half * Gu, E, F}, {half * Gv, F, G}};
  ExprMatrix b{{Expr(), half * Ev, half * Gu}, {half * Ev, E, F}, {half * Gu, F, G}};
  Expr w = E * G - F * F;
  Expr gauss = (det3(a) - det3(b)) / (w * w);
  return Expr(2) * gauss;
}

}  // namespace opcalc
