#include "doctest.h"
#include "opcalc/coulomb2d.hpp"
#include "opcalc/g2algebra.hpp"
#include "opcalc/rings.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;

TEST_CASE("generator set") {
  auto gens = g2::build_generators(Expr(2));
  REQUIRE(gens.generators.size() == 11);
  CHECK(gens.generators.front().name == "J0");
  CHECK(gens.generators.back().name == "T2");
  CHECK(gens.subset("lowering+gl2").size() == 8);
  CHECK(gens.subset("raising").size() == 3);
  CHECK(gens.get("J4") == compose(op("r"), gens.get("J0")));
}

TEST_CASE("sl(2) relations") {
  auto s = g2::sl2_generators(Expr(3));
  const DiffOp &jp = s[0].op, &j0 = s[1].op, &jm = s[2].op;
  CHECK(commutator(j0, jp) == Expr(2) * jp);
  CHECK(commutator(j0, jm) == Expr(-2) * jm);
  CHECK(commutator(jp, jm) == Expr(-1) * j0);
}

TEST_CASE("structure and invariance checks") {
  CHECK(g2::check_flag_invariance().status == Status::Pass);
  CHECK(g2::check_structure("lowering+gl2").status == Status::Pass);
  CHECK(g2::check_structure("sl2").status == Status::Pass);
  CHECK(g2::check_jacobi().status == Status::Pass);
}

TEST_CASE("h_a and l_a in generator form") {
  CHECK(g2::h_lie_form() == coulomb2d::h_a());
  CHECK(g2::l_lie_form() == coulomb2d::l_a());
  CHECK_FALSE(g2::h_lie_form(true) == coulomb2d::h_a());
}

TEST_CASE("u excess") {
  CHECK(g2::u_excess(op("u^2*D[u]")) == 1);
  CHECK(g2::u_excess(op("u*D[u]^2 + r")) == 0);
  CHECK(g2::u_excess(op("D[u]")) == -1);
}

TEST_CASE("h_a and l_a decompose over the lowering subset") {
  auto gens = g2::build_generators(Expr(0)).subset("lowering+gl2");
  auto h = g2::decompose("h_a", coulomb2d::h_a(), gens, 2);
  CHECK(h.exact());
  CHECK(h.obstruction.empty());
  auto l = g2::decompose("l_a", coulomb2d::l_a(), gens, 2);
  CHECK(l.exact());
}

TEST_CASE("ordered monomial names") {
  CHECK(g2::monomial_str({}, {"J0"}) == "1");
  CHECK(g2::monomial_str({0, 1, 1}, {"J0", "J1"}) == "J0*J1^2");
}
