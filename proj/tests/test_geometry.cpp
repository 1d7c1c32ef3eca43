#include "doctest.h"
#include "opcalc/diffgeo.hpp"
#include "opcalc/geometry.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;
namespace sym = opcalc::symbols;

TEST_CASE("inverse and determinant of a symbolic 2x2 matrix") {
  ExprMatrix m{{ex("r"), ex("u")}, {ex("u"), ex("1")}};
  auto inv = invert_and_det(m);
  CHECK(inv.determinant == ex("r - u^2"));
  CHECK(inv.inverse[0][0] == ex("1/(r-u^2)"));
  CHECK(inv.inverse[0][1] == ex("-u/(r-u^2)"));
  CHECK(inv.inverse[1][1] == ex("r/(r-u^2)"));
  CHECK_THROWS_AS(invert_and_det({{ex("r"), ex("r")}, {ex("u"), ex("u")}}), std::domain_error);
}

TEST_CASE("Coulomb cometric") {
  CoMetric g = geometry::coulomb_cometric();
  CHECK(invert_and_det(g.entries).determinant == ex("u*(r^2-u)"));
  CHECK(geometry::check_metric().status == Status::Pass);
}

TEST_CASE("curvature of model surfaces") {
  std::vector<SymbolId> ru{sym::r, sym::u};
  CHECK(scalar_curvature({{Expr(1), Expr()}, {Expr(), ex("r^2")}}, ru).is_zero());
  // Hyperbolic plane in the upper half plane, coordinates (r, u) with u > 0.
  ExprMatrix half_plane{{ex("1/u^2"), Expr()}, {Expr(), ex("1/u^2")}};
  CHECK(scalar_curvature(half_plane, ru) == Expr(-2));
  CHECK(brioschi_curvature(half_plane, ru) == Expr(-2));
}

TEST_CASE("Christoffel and Brioschi curvature agree on the Coulomb metric") {
  std::vector<SymbolId> ru{sym::r, sym::u};
  ExprMatrix metric = invert_and_det(geometry::coulomb_cometric().entries).inverse;
  CHECK(scalar_curvature(metric, ru) == brioschi_curvature(metric, ru));
}

TEST_CASE("Laplace-Beltrami operator in polar coordinates") {
  // (r, u) playing polar (radius, angle).
  CoMetric polar{{sym::r, sym::u}, {{Expr(1), Expr()}, {Expr(), ex("1/r^2")}}};
  CHECK(laplace_beltrami(polar, ru_spec()) == op("D[r]^2 + 1/r*D[r] + 1/r^2*D[u]^2"));
}

TEST_CASE("Laplace-Beltrami of the Coulomb cometric has h_a's symbol") {
  DiffOp lb = laplace_beltrami(geometry::coulomb_cometric(), ru_spec());
  CHECK(lb.coefficient(DerivIndex::unit(0, 2)) == ex("r/2"));
  CHECK(lb.coefficient(DerivIndex::unit(1, 2)) == ex("2*r*u"));
  CHECK(geometry::check_laplacian().status == Status::Pass);
}

TEST_CASE("gauge rotation to Schrodinger form holds at both parities") {
  for (int parity = 0; parity <= 1; ++parity) {
    auto r = geometry::check_schrodinger({{sym::p, Expr(parity)}});
    CHECK(r.status == Status::Pass);
  }
}
