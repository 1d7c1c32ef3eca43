#include <random>

#include "doctest.h"
#include "opcalc/coulomb2d.hpp"
#include "opcalc/flagrep.hpp"
#include "opcalc/rings.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;
namespace sym = opcalc::symbols;

TEST_CASE("basis order and dimension") {
  MonomialBasis b(3);
  CHECK(b.size() == 6);
  CHECK(MonomialBasis::dimension(3) == 6);
  CHECK(MonomialBasis::dimension(8) == 25);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < b.size(); ++k) labels.push_back(b.label(k));
  CHECK(labels == std::vector<std::string>{"1", "r", "r^2", "u", "r^3", "r*u"});
  CHECK(b.index_of(1, 1) == 5);
  CHECK(b.index_of(0, 2) == -1);
}

TEST_CASE("matrix of h_a on P_1") {
  OperatorMatrix m = matrix_of(coulomb2d::h_a(), 1);
  REQUIRE(m.size() == 2);
  CHECK(Expr(m(0, 0)) == ex("beta*(1+p+mu)"));
  CHECK(Expr(m(0, 1)) == ex("-(1+p+mu)"));
  CHECK(m(1, 0).is_zero());
  CHECK(Expr(m(1, 1)) == ex("beta*(2+p+mu)"));
  CHECK(m.is_upper_triangular());
}

TEST_CASE("identity matrix on P_2") {
  OperatorMatrix m = matrix_of(DiffOp::identity(ru_spec()), 2);
  CHECK(m.size() == 4);
  CHECK(m == OperatorMatrix::identity(2));
}

TEST_CASE("invariance failures carry a witness") {
  auto res = is_invariant(op("r^2"), 2);
  CHECK_FALSE(res.invariant);
  REQUIRE(res.witness);
  CHECK(res.witness->first == ex("r"));
  CHECK(res.witness->second == ex("r^3"));
  CHECK_THROWS_AS(matrix_of(op("r^2"), 2), InvarianceError);
  CHECK_THROWS_AS(is_invariant(op("1/r*D[r]"), 2), std::invalid_argument);
  CHECK(is_invariant(op("D[r] + r*D[r]^2 + u*D[u]"), 4).invariant);
}

TEST_CASE("characteristic polynomial of a triangular matrix") {
  auto report = verify_spectrum(coulomb2d::h_a(), 4, coulomb2d::alpha);
  CHECK(report.pass);
  CHECK(report.expected.size() == 5);
  CHECK(report.expected[4].second == 3);
}

TEST_CASE("eigenpolynomials span P_n at a generic point") {
  std::map<SymbolId, Expr> point{{sym::beta, ex("3/2")}, {sym::mu, ex("1/3")}, {sym::p, Expr(1)}};
  std::size_t total = 0;
  for (unsigned k = 0; k <= 5; ++k) total += eigenpolynomials(coulomb2d::h_a(), 5, k, coulomb2d::alpha, point).size();
  CHECK(total == MonomialBasis::dimension(5));
  auto v = eigenpolynomials(coulomb2d::h_a(), 1, 1, coulomb2d::alpha, point);
  REQUIRE(v.size() == 1);
  CHECK(apply(coulomb2d::h_a().substitute(point), v[0]) == coulomb2d::alpha(1).substitute(point) * v[0]);
}

TEST_CASE("equality oracle agrees with term-map equality") {
  std::mt19937 rng(7);
  int equal = 0;
  for (int k = 0; k < 1000; ++k) {
    DiffOp a = random_op(rng, 3);
    DiffOp b = a;
    switch (rng() % 3) {
      case 0:
        break;
      case 1:
        b = random_op(rng, 3);
        break;
      default:
        b = a + random_op(rng, 3) - random_op(rng, 3);
    }
    unsigned bound = std::max(a.order(), b.order());
    bool same = (a == b);
    equal += same;
    REQUIRE(equality_oracle(a, b, bound) == same);
  }
  CHECK(equal > 300);
}

namespace {

// Flag-preserving generators 1, h_a, l_a, b_a, c at an integer parameter
// point, with all pairwise products. compose is bilinear, so products of
// random combinations are assembled from these.
struct Pool {
  std::vector<DiffOp> ops;
  std::vector<std::vector<DiffOp>> products;
  explicit Pool(const std::map<SymbolId, Expr>& point) {
    const auto& n = coulomb2d::named();
    ops.push_back(DiffOp::identity(n.h_a.spec()));
    for (const DiffOp* a : {&n.h_a, &n.l_a, &n.b_a, &n.c}) ops.push_back(a->substitute(point));
    for (const auto& a : ops) {
      products.emplace_back();
      for (const auto& b : ops) products.back().push_back(compose(a, b));
    }
  }
};

std::vector<int> random_coefficients(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<int> c(n);
  for (auto& x : c) x = coef(rng);
  return c;
}

DiffOp combine(const std::vector<int>& c, const std::vector<DiffOp>& ops) {
  DiffOp a = Expr(0) * ops[0];
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (c[i] != 0) a = a + Expr(c[i]) * ops[i];
  return a;
}

}  // namespace

TEST_CASE("matrix_of is an algebra homomorphism on the flag") {
  std::mt19937 rng(11);
  std::vector<Pool> pools;
  for (int b = 1; b <= 2; ++b)
    for (int m = 0; m <= 1; ++m)
      for (int p = 0; p <= 1; ++p)
        pools.emplace_back(std::map<SymbolId, Expr>{{sym::beta, Expr(b)}, {sym::mu, Expr(m)}, {sym::p, Expr(p)}});
  for (int k = 0; k < 1000; ++k) {
    const Pool& pool = pools[rng() % pools.size()];
    unsigned n = rng() % 6;
    auto ca = random_coefficients(rng, pool.ops.size());
    auto cb = random_coefficients(rng, pool.ops.size());
    DiffOp a = combine(ca, pool.ops), b = combine(cb, pool.ops);
    DiffOp ab = Expr(0) * a, ba = Expr(0) * a;
    for (std::size_t i = 0; i < ca.size(); ++i)
      for (std::size_t j = 0; j < cb.size(); ++j)
        if (ca[i] * cb[j] != 0) {
          ab = ab + Expr(ca[i] * cb[j]) * pool.products[i][j];
          ba = ba + Expr(ca[i] * cb[j]) * pool.products[j][i];
        }
    OperatorMatrix ma = matrix_of(a, n), mb = matrix_of(b, n);
    REQUIRE(matrix_of(ab, n) == ma * mb);
    REQUIRE(matrix_of(ab - ba, n) == ma * mb - mb * ma);
    REQUIRE(matrix_of(ba - ab, n) == mb * ma - ma * mb);
  }
}

TEST_CASE("matrices of h_a and c commute at p = 0 and p = 1") {
  const auto& n = coulomb2d::named();
  for (unsigned d = 0; d <= 5; ++d) {
    OperatorMatrix h = matrix_of(n.h_a, d), c = matrix_of(n.c, d), l = matrix_of(n.l_a, d);
    CHECK(h * l == l * h);
    OperatorMatrix hc = h * c - c * h;
    for (std::size_t i = 0; i < hc.size(); ++i)
      for (std::size_t j = 0; j < hc.size(); ++j) {
        Expr e(hc(i, j));
        CHECK(e.substitute(sym::p, Expr(0)).is_zero());
        CHECK(e.substitute(sym::p, Expr(1)).is_zero());
      }
    for (int parity = 0; parity <= 1; ++parity) {
      std::map<SymbolId, Expr> at{{sym::p, Expr(parity)}};
      DiffOp hp = n.h_a.substitute(at), cp = n.c.substitute(at);
      CHECK(matrix_of(hp, d) * matrix_of(cp, d) == matrix_of(cp, d) * matrix_of(hp, d));
    }
  }
}
