#include "doctest.h"
#include "opcalc/coulomb3d.hpp"
#include "opcalc/rings.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;
namespace c3 = opcalc::coulomb3d;

TEST_CASE("angular momentum annihilates radial functions") {
  auto L = c3::angular_momentum();
  for (const auto& l : L) CHECK(apply(l, ex("r^3 + 1/r")).is_zero());
}

TEST_CASE("Sturm form and the classical identities") {
  CHECK(c3::check_eq7().status == Status::Pass);
  CHECK(c3::check_h_integrals().status == Status::Pass);
  CHECK(c3::check_eq4().status == Status::Pass);
  CHECK(c3::check_eq5().status == Status::Pass);
  for (const char* which : {"LL", "AL", "AA"}) CHECK(c3::check_eq6(which).status == Status::Pass);
  CHECK(c3::check_lk().status == Status::Pass);
}

TEST_CASE("B candidates") {
  const auto& cands = c3::b_candidates();
  REQUIRE(cands.size() == 6);
  CHECK(c3::passing_b_candidate() == "cm-right");
  for (const auto& c : cands) {
    auto r = c3::check_b_candidate(c);
    CHECK_MESSAGE((r.status == Status::Pass) == (c.label == "cm-right"), c.label);
  }
  CHECK(c3::check_b_sweep().status == Status::Pass);
}
