#include <random>

#include "doctest.h"
#include "opcalc/rings.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;
namespace sym = opcalc::symbols;

TEST_CASE("compose normal-orders with the Leibniz rule") {
  CHECK(compose(op("D[r]"), op("r")) == op("r*D[r] + 1"));
  CHECK(compose(op("D[u]"), op("u^2")) == op("u^2*D[u] + 2*u"));
  CHECK(compose(op("u*D[r]^2"), op("r*D[u]")) == op("r*u*D[r]^2*D[u] + 2*u*D[r]*D[u]"));
}

TEST_CASE("commutator basics") {
  CHECK(commutator(op("D[r]"), op("r")) == op("1"));
  DiffOp a = op("r^2*D[u]^2 + beta*D[r]");
  CHECK(commutator(a, a).is_zero());
  CHECK(commutator(op("r*D[r]"), op("u*D[u]")).is_zero());
}

TEST_CASE("apply") {
  DiffOp h = op("-1/2*r*D[r]^2 - 2*r*u*D[u]^2 - 2*u*D[r]*D[u] - 2*((1+mu)*r - beta*u)*D[u]"
                " - (1+p+mu-beta*r)*D[r] + beta*(1+p+mu)");
  CHECK(apply(h, Expr(1)) == ex("beta*(1+p+mu)"));
  CHECK(apply(h, ex("r")) == ex("-(1+p+mu) + beta*(2+p+mu)*r"));
  DiffOp l = op("2*u*(r^2-u)*D[u]^2 - (u*(1+2*p) - 2*(1+mu)*(r^2-u))*D[u]");
  CHECK(apply(l, ex("u")) == ex("2*(1+mu)*r^2 - (3+2*p+2*mu)*u"));
}

TEST_CASE("conjugation by a gauge factor") {
  GaugeData exp_gauge{{ex("-beta"), Expr()}};
  CHECK(conjugate(op("D[r]"), exp_gauge) == op("D[r] - beta"));
  CHECK(conjugate(op("D[r]^2"), exp_gauge) == op("D[r]^2 - 2*beta*D[r] + beta^2"));
  GaugeData pow_gauge{{Expr(), ex("-(1+2*mu)/(4*u)")}};
  CHECK(conjugate(op("D[u]"), pow_gauge) == op("D[u] - (1+2*mu)/(4*u)"));
  GaugeData open{{ex("u"), Expr()}};
  CHECK_THROWS_AS(conjugate(op("D[r]"), open), std::invalid_argument);
}

TEST_CASE("change of variables u = rho^2") {
  auto target = VariableSpec::make("rrho", {sym::r, sym::rho}, {});
  std::map<SymbolId, Expr> chart{{sym::u, ex("rho^2")}};
  CHECK(change_variables(op("u*D[u]"), target, chart) == op("rho/2*D[rho]", target));
  CHECK(change_variables(op("2*u*D[u]"), target, chart) == op("rho*D[rho]", target));
  CHECK(change_variables(op("4*u^2*D[u]^2 + 2*u*D[u]"), target, chart) == op("rho^2*D[rho]^2", target));
  std::map<SymbolId, Expr> degenerate{{sym::u, ex("r^2")}};
  CHECK_THROWS_AS(change_variables(op("D[u]"), target, degenerate), std::invalid_argument);
}

TEST_CASE("angular projection") {
  auto cyl = VariableSpec::make("rrhophi", {sym::r, sym::rho, sym::phi}, {});
  auto plane = VariableSpec::make("rrho", {sym::r, sym::rho}, {});
  Expr charge = ex("i*mu");
  CHECK(project_angular(op("1/rho^2*D[phi]^2", cyl), sym::phi, charge, plane) == op("-mu^2/rho^2", plane));
  CHECK(project_angular(op("r*D[rho]", cyl), sym::phi, charge, plane) == op("r*D[rho]", plane));
  CHECK_THROWS_AS(project_angular(op("D[phi]", cyl), sym::phi, charge, plane), std::domain_error);
  CHECK_THROWS_AS(project_angular(op("phi*D[r]", cyl), sym::phi, charge, plane), std::invalid_argument);
}

TEST_CASE("mismatched specs are rejected") {
  auto other = VariableSpec::make("xy", {sym::x, sym::y}, {});
  CHECK_THROWS_AS(compose(op("D[r]"), op("D[x]", other)), std::invalid_argument);
}

TEST_CASE("Jacobi identity on random operators") {
  std::mt19937 rng(42);
  for (int k = 0; k < 1000; ++k) {
    DiffOp a = random_op(rng, 3), b = random_op(rng, 3), c = random_op(rng, 3);
    DiffOp j = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b);
    REQUIRE(j.is_zero());
  }
}

TEST_CASE("compose is associative and respects order bounds") {
  std::mt19937 rng(43);
  for (int k = 0; k < 1000; ++k) {
    DiffOp a = random_op(rng, 2), b = random_op(rng, 2), c = random_op(rng, 2);
    REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
    DiffOp ab = compose(a, b);
    REQUIRE(ab.order() <= a.order() + b.order());
    DiffOp comm = commutator(a, b);
    if (!comm.is_zero() && a.order() + b.order() > 0) REQUIRE(comm.order() + 1 <= a.order() + b.order());
  }
}

TEST_CASE("apply is compatible with compose") {
  std::mt19937 rng(44);
  for (int k = 0; k < 1000; ++k) {
    DiffOp a = random_op(rng, 2), b = random_op(rng, 2);
    Expr f(random_poly(rng, {sym::r, sym::u}, 3, 3));
    REQUIRE(apply(compose(a, b), f) == apply(a, apply(b, f)));
  }
}

TEST_CASE("conjugation is a homomorphism") {
  std::mt19937 rng(45);
  GaugeData g{{ex("beta - p*r/(r^2-u)"), ex("p/(2*(r^2-u)) - (1+2*mu)/(4*u)")}};
  for (int k = 0; k < 1000; ++k) {
    DiffOp a = random_op(rng, 2, 2), b = random_op(rng, 1, 2);
    REQUIRE(conjugate(compose(a, b), g) == compose(conjugate(a, g), conjugate(b, g)));
  }
}

TEST_CASE("change of variables round trip") {
  // (r, u) -> (x, y) with r = x + y, u = y, and back.
  auto xy = VariableSpec::make("xy", {sym::x, sym::y}, {});
  std::map<SymbolId, Expr> fwd{{sym::r, ex("x + y")}, {sym::u, ex("y")}};
  std::map<SymbolId, Expr> back{{sym::x, ex("r - u")}, {sym::y, ex("u")}};
  std::mt19937 rng(46);
  for (int k = 0; k < 200; ++k) {
    DiffOp a = random_op(rng, 3);
    DiffOp there = change_variables(a, xy, fwd);
    REQUIRE(change_variables(there, ru_spec(), back) == a);
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(47);
  for (int k = 0; k < 1000; ++k) {
    DiffOp a = random_op(rng, 3);
    if (k % 2) a = ex("1/(r - 2*u)") * a + op("i*beta*D[u]");
    REQUIRE(op(a.str()) == a);
  }
}
