#include "doctest.h"
#include "opcalc/coulomb2d.hpp"
#include "opcalc/flagrep.hpp"
#include "opcalc/rings.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;
namespace sym = opcalc::symbols;
namespace c2 = opcalc::coulomb2d;

TEST_CASE("eigenvalue formula") {
  CHECK(c2::alpha(0) == ex("beta*(1+p+mu)"));
  CHECK(c2::alpha(3) == ex("beta*(4+p+mu)"));
}

TEST_CASE("K reduces to h at both parities") {
  CHECK(c2::check_pipeline(0).status == Status::Pass);
  CHECK(c2::check_pipeline(1).status == Status::Pass);
  CHECK(c2::check_relate_h_ha().status == Status::Pass);
}

TEST_CASE("h_a acts on constants by its ground-state eigenvalue") {
  CHECK(apply(c2::h_a(), Expr(1)) == c2::alpha(0));
}

TEST_CASE("integrals commute with h_a at p = 0 and p = 1") {
  const auto& n = c2::named();
  CHECK(commutator(n.h_a, n.l_a).is_zero());
  for (int parity = 0; parity <= 1; ++parity) {
    std::map<SymbolId, Expr> at{{sym::p, Expr(parity)}};
    CHECK(commutator(n.h_a, n.b_a).substitute(at).is_zero());
    CHECK(commutator(n.h_a, n.c).substitute(at).is_zero());
  }
}

TEST_CASE("symbolic integrability check reports the p(p-1) factor") {
  auto r = c2::check_integrals();
  CHECK(r.status == Status::Fail);
  CHECK(r.residual_terms > 0);
  CHECK(c2::check_integrals({{sym::p, Expr(0)}}).status == Status::Pass);
  CHECK(c2::check_integrals({{sym::p, Expr(1)}}).status == Status::Pass);
}

TEST_CASE("c = [b_a, l_a] has order 5 and the displayed leading terms") {
  CHECK(c2::named().c.order() == 5);
  CHECK(c2::check_c_leading().status == Status::Pass);
}

TEST_CASE("integrals preserve the flag and h_a has the predicted spectrum") {
  CHECK(c2::check_flag_invariance(5).status == Status::Pass);
  CHECK(c2::check_spectrum(5).status == Status::Pass);
}

TEST_CASE("ordered cubic monomials") {
  c2::CubicMonomial m{1, 2, 0, 1};
  CHECK(m.degree() == 4);
  CHECK(m.order() == 11);
  CHECK(m.weight() == -3);
  CHECK(m.str() == "h*l^2*c");
}

TEST_CASE("[c, l_a] closes on a cubic at each parity") {
  for (int parity = 0; parity <= 1; ++parity) {
    auto dec = c2::decompose_cubic('l', 3, 4, parity);
    CHECK(dec.combination.exact);
    CHECK_FALSE(dec.table.empty());
  }
  auto r = c2::check_cubic('l');
  CHECK(r.status == Status::Pass);
  CHECK_FALSE(r.notes.empty());
}
