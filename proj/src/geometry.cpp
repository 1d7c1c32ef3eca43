#include "opcalc/geometry.hpp"

#include <random>

#include "opcalc/coulomb2d.hpp"
#include "opcalc/parser.hpp"
#include "opcalc/rings.hpp"

namespace opcalc::geometry {

namespace sym = symbols;

namespace {

Expr ex(const std::string& s) { return parse_expr(s); }

const SpecPtr& xyz_spec() {
  static const SpecPtr s = VariableSpec::make("x,y,z", {sym::x, sym::y, sym::z}, {}, cartesian_context());
  return s;
}

// Random polynomial in (r, u) with a positive constant term.
Expr random_entry(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  std::string s = std::to_string(1 + std::uniform_int_distribution<int>(0, 3)(rng));
  for (int k = 0; k < 2; ++k) {
    int c = coef(rng);
    if (c == 0) continue;
    s += (c > 0 ? " + " : " - ") + std::to_string(std::abs(c)) + "*r^" + std::to_string(deg(rng)) + "*u^" +
         std::to_string(deg(rng));
  }
  return ex(s);
}

}  // namespace

CoMetric coulomb_cometric() { return CoMetric{{sym::r, sym::u}, {{ex("r/2"), ex("u")}, {ex("u"), ex("2*r*u")}}}; }

GaugeData schrodinger_gauge(bool with_u_power) {
  std::string du = "p/(2*(r^2 - u))";
  if (with_u_power) du += " - (1 + 2*mu)/(4*u)";
  return GaugeData{{ex("beta - p*r/(r^2 - u)"), ex(du)}};
}

Expr effective_potential() { return ex("(4*mu^2 - 1)*r/(8*u) + beta^2*r/2"); }

CheckReport check_metric(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("geo.metric", bindings);
  Inversion inv = invert_and_det(coulomb_cometric().entries);
  cb.expect_equal("det g^{mu nu}", inv.determinant, ex("u*(r^2 - u)"));
  ExprMatrix want{{ex("2*r*u"), ex("-u")}, {ex("-u"), ex("r/2")}};
  Expr scale = ex("1/(u*(r^2 - u))");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      cb.expect_equal("g_{" + std::to_string(i) + std::to_string(j) + "}", inv.inverse[i][j], scale * want[i][j]);
  return cb.finish();
}

CheckReport check_curvature(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("geo.curvature", bindings);
  std::vector<SymbolId> ru{sym::r, sym::u};
  ExprMatrix metric = invert_and_det(coulomb_cometric().entries).inverse;
  Expr r = scalar_curvature(metric, ru);
  cb.expect_equal("R", r, ex("r*(4*u - 1)/(2*u*(r^2 - u)^2)"));
  cb.expect_equal("Brioschi vs Christoffel", brioschi_curvature(metric, ru), r);
  // Unit sphere in the chart t = cos(theta).
  std::vector<SymbolId> ts{sym::t, sym::s};
  Expr one_minus_t2 = Expr(1) - Expr::symbol(sym::t).pow(2);
  ExprMatrix sphere{{Expr(1) / one_minus_t2, Expr()}, {Expr(), one_minus_t2}};
  cb.expect_equal("sphere", scalar_curvature(sphere, ts), Expr(2));
  ExprMatrix polar{{Expr(1), Expr()}, {Expr(), ex("r^2")}};
  cb.expect_equal("flat polar", scalar_curvature(polar, ru), Expr());
  std::mt19937 rng(20231);
  for (int k = 0; k < 3; ++k) {
    ExprMatrix diag{{random_entry(rng), Expr()}, {Expr(), random_entry(rng)}};
    cb.expect_equal("random diagonal " + std::to_string(k), scalar_curvature(diag, ru), brioschi_curvature(diag, ru));
  }
  return cb.finish();
}

CheckReport check_laplacian(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("geo.laplacian", bindings);
  CoMetric g = coulomb_cometric();
  const SpecPtr& spec = coulomb2d::ru_spec();
  DiffOp lb = laplace_beltrami(g, spec);
  DerivIndex rr = DerivIndex::unit(0, 2), uu = DerivIndex::unit(1, 2), ru = DerivIndex::unit(0) + DerivIndex::unit(1);
  cb.expect_equal("symbol rr", lb.coefficient(rr), g.entries[0][0]);
  cb.expect_equal("symbol uu", lb.coefficient(uu), g.entries[1][1]);
  cb.expect_equal("symbol ru", lb.coefficient(ru), Expr(2) * g.entries[0][1]);
  // First-order part: d_mu g^{mu nu} + (1/2) g^{mu nu} d_mu log det g_{..}.
  Expr det = invert_and_det(g.entries).determinant;
  for (std::size_t nu = 0; nu < 2; ++nu) {
    Expr want;
    for (std::size_t m = 0; m < 2; ++m)
      want += g.entries[m][nu].derivative(g.coords[m]) -
              Expr(Scalar(Rational(1, 2))) * g.entries[m][nu] * det.derivative(g.coords[m]) / det;
    cb.expect_equal("first order " + symbols::name(g.coords[nu]), lb.coefficient(DerivIndex::unit(nu)), want);
  }
  const auto* cart = cartesian_context();
  CoMetric flat = cometric_from_embedding(
      {sym::x, sym::y, sym::z}, {Expr::symbol(sym::x, cart), Expr::symbol(sym::y, cart), Expr::symbol(sym::z, cart)},
      cart);
  cb.expect_equal("flat embedding", laplace_beltrami(flat, xyz_spec()),
                  parse_operator("D[x]^2 + D[y]^2 + D[z]^2", xyz_spec()));
  cb.expect_equal("cylindrical", coulomb2d::laplacian_cylindrical(),
                  parse_operator("D[r]^2 + D[rho]^2 + 2*rho/r*D[r]*D[rho] + 1/rho^2*D[phi]^2 + 2/r*D[r] + 1/rho*D[rho]",
                                 coulomb2d::cylinder_spec()));
  return cb.finish();
}

CheckReport check_schrodinger(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("geo.schrodinger", bindings);
  const SpecPtr& spec = coulomb2d::ru_spec();
  DiffOp lb = laplace_beltrami(coulomb_cometric(), spec);
  DiffOp want = -lb + DiffOp::multiplication(spec, effective_potential());
  DiffOp h = coulomb2d::h_a();
  DiffOp residual = conjugate(h, schrodinger_gauge()) - want;
  if (!cb.expect_zero("Gamma^-1 h_a Gamma + Delta_LB - V_eff", residual)) {
    DiffOp sr = cb.specialize(residual);
    if (sr.substitute({{sym::p, Expr(0)}}).is_zero() && sr.substitute({{sym::p, Expr(1)}}).is_zero())
      cb.note("holds modulo p^2 = p");
  }
  DiffOp control = cb.specialize(conjugate(h, schrodinger_gauge(false)) - want);
  bool inverse_u = false;
  for (const auto& [idx, c] : control.terms()) inverse_u = inverse_u || c.den().contains(sym::u);
  if (inverse_u) {
    cb.note("control: without the u-power the residual has 1/u terms");
  } else {
    cb.fail("control", "dropping the u-power did not leave 1/u terms");
  }
  return cb.finish();
}

}  // namespace opcalc::geometry
