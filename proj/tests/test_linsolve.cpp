#include "doctest.h"
#include "opcalc/linsolve.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;
namespace sym = opcalc::symbols;

TEST_CASE("sparse solve recovers a rational solution") {
  // x + 2y = 5, 3x - y = 1/2
  std::vector<SparseColumn> cols{{{0, Rational(1)}, {1, Rational(3)}}, {{0, Rational(2)}, {1, Rational(-1)}}};
  SparseColumn rhs{{0, Rational(5)}, {1, Rational(1, 2)}};
  auto sol = solve_sparse(cols, rhs, 2);
  REQUIRE(sol.consistent);
  CHECK(sol.rank == 2);
  CHECK(sol.x[0] == Rational(6, 7));
  CHECK(sol.x[1] == Rational(29, 14));
}

TEST_CASE("sparse solve reports inconsistency") {
  std::vector<SparseColumn> cols{{{0, Rational(1)}, {1, Rational(2)}}};
  SparseColumn rhs{{0, Rational(1)}, {1, Rational(3)}};
  auto sol = solve_sparse(cols, rhs, 2);
  CHECK_FALSE(sol.consistent);
  CHECK_FALSE(sol.conflicting_rows.empty());
}

TEST_CASE("large rational entries survive reconstruction") {
  Rational big(mpz_class("123456789012345678901234567890"), mpz_class("98765432109876543"));
  big.canonicalize();
  std::vector<SparseColumn> cols{{{0, Rational(7)}}, {{1, Rational(1)}, {0, Rational(1)}}};
  SparseColumn rhs{{0, big}, {1, Rational(-1, 3)}};
  auto sol = solve_sparse(cols, rhs, 2);
  REQUIRE(sol.consistent);
  CHECK(sol.x[1] == Rational(-1, 3));
  CHECK(Rational(7) * sol.x[0] + sol.x[1] == big);
}

TEST_CASE("several right-hand sides share one elimination") {
  std::vector<SparseColumn> cols{{{0, Rational(2)}}, {{1, Rational(3)}}};
  auto sols = solve_sparse_multi(cols, {{{0, Rational(4)}}, {{1, Rational(1)}}, {{2, Rational(1)}}}, 3);
  REQUIRE(sols.size() == 3);
  CHECK(sols[0].consistent);
  CHECK(sols[0].x[0] == Rational(2));
  CHECK(sols[1].x[1] == Rational(1, 3));
  CHECK_FALSE(sols[2].consistent);
}

TEST_CASE("parameter monomials") {
  auto ms = parameter_monomials({sym::beta, sym::mu}, 2);
  CHECK(ms.size() == 9);
}

TEST_CASE("operator combinations with parameter coefficients") {
  std::vector<DiffOp> basis{op("D[r]"), op("r*D[u]"), op("1")};
  DiffOp target = op("(beta+mu^2)*D[r] - 3*mu*r*D[u] + 1/2");
  auto allowed = parameter_monomials({sym::beta, sym::mu}, 2);
  auto c = solve_combination(basis, target, {allowed, allowed, allowed});
  REQUIRE(c.exact);
  CHECK(c.coefficients[0] == ex("beta+mu^2"));
  CHECK(c.coefficients[1] == ex("-3*mu"));
  CHECK(c.coefficients[2] == ex("1/2"));
  CHECK(c.residual.is_zero());

  auto miss = solve_combination({op("D[r]")}, op("D[r] + D[u]"), {allowed});
  CHECK_FALSE(miss.exact);
  CHECK(miss.residual == op("D[u]"));
}

TEST_CASE("complex coefficients") {
  std::vector<DiffOp> basis{op("D[r]")};
  DiffOp target = op("(2+3*i)*D[r]");
  auto real = solve_combination(basis, target, {{Monomial()}});
  CHECK_FALSE(real.exact);
  auto cplx = solve_combination(basis, target, {{Monomial()}}, true);
  REQUIRE(cplx.exact);
  CHECK(cplx.coefficients[0] == ex("2+3*i"));
}
