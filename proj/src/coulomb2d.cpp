#include "opcalc/coulomb2d.hpp"

#include <algorithm>
#include <mutex>

#include "opcalc/diffgeo.hpp"
#include "opcalc/flagrep.hpp"
#include "opcalc/parser.hpp"
#include "opcalc/rings.hpp"

namespace opcalc::coulomb2d {

namespace sym = symbols;

const SpecPtr& ru_spec() {
  static const SpecPtr s = VariableSpec::make("r,u", {sym::r, sym::u}, {sym::beta, sym::mu, sym::p});
  return s;
}

const SpecPtr& rrho_spec() {
  static const SpecPtr s = VariableSpec::make("r,rho", {sym::r, sym::rho}, {sym::beta, sym::mu, sym::p});
  return s;
}

const SpecPtr& cylinder_spec() {
  static const SpecPtr s =
      VariableSpec::make("r,rho,phi", {sym::r, sym::rho, sym::phi}, {sym::beta, sym::mu, sym::p, sym::E});
  return s;
}

DiffOp h_operator() {
  return parse_operator(
      "-1/2*r*D[r]^2 - 1/2*r*D[rho]^2 - rho*D[r]*D[rho] - ((1+2*mu)*r - 2*beta*rho^2)/(2*rho)*D[rho]"
      " - (1+p+mu - beta*r)*D[r] + beta*(1+p+mu)",
      rrho_spec());
}

DiffOp h_a() {
  return parse_operator(
      "-1/2*r*D[r]^2 - 2*r*u*D[u]^2 - 2*u*D[r]*D[u] - 2*((1+mu)*r - beta*u)*D[u]"
      " - (1+p+mu - beta*r)*D[r] + beta*(1+p+mu)",
      ru_spec());
}

DiffOp l_a() {
  return parse_operator("2*u*(r^2-u)*D[u]^2 - (u*(1+2*p) - 2*(1+mu)*(r^2-u))*D[u]", ru_spec());
}

DiffOp two_b_a() {
  return parse_operator(
      "u/4*D[r]^4 + 4*u^3*D[u]^4 + 2*u*(2*r^2 + u)*D[u]^2*D[r]^2 + 2*r*u*D[r]^3*D[u]"
      " + 8*r*u^2*D[u]^3*D[r] + ((mu+1)*r - beta*u)*D[r]^3"
      " + 8*u^2*(mu+p+3 - beta*r)*D[u]^3"
      " + (2*u*(mu+p - 3*beta*r + 3) + 4*(mu+1)*r^2)*D[r]^2*D[u]"
      " + 4*u*(r*(3*mu + 2*p - 2*beta*r + 7) - beta*u)*D[u]^2*D[r]"
      " + ((mu+1)*(mu+p+1) - 3*beta*(mu+1)*r + beta^2*u)*D[r]^2"
      " + (4*r*((mu+1)*(mu+2*p+3) + beta^2*u) - 4*beta*u*(mu+p+3) - 8*beta*(mu+1)*r^2)*D[r]*D[u]"
      " + 4*u*(mu^2 + 3*mu*(p - beta*r + 2) + p*(7 - 2*beta*r) + beta*r*(beta*r - 7) + 7)*D[u]^2"
      " - 2*beta*(mu+1)*(mu+p+1 - beta*r)*D[r]"
      " + (4*(mu+1)*(p+1)*(mu+p+1) - 4*beta*(mu+1)*r*(mu+2*p+3) + 2*beta^2*(2*(mu+1)*r^2 + u))*D[u]",
      ru_spec());
}

DiffOp b_a() { return Expr(Scalar(Rational(1, 2))) * two_b_a(); }

const NamedOperators& named() {
  static const NamedOperators ops = [] {
    DiffOp b = b_a();
    DiffOp l = l_a();
    DiffOp c = commutator(b, l);
    return NamedOperators{h_a(), l, b, c};
  }();
  return ops;
}

Expr alpha(unsigned k) {
  return parse_expr("beta*(" + std::to_string(k) + " + 1 + p + mu)");
}

std::vector<std::pair<DerivIndex, Expr>> c_leading_terms() {
  auto idx = [](unsigned kr, unsigned ku) {
    DerivIndex d;
    d.set(0, kr);
    d.set(1, ku);
    return d;
  };
  return {
      {idx(0, 5), parse_expr("8*u^3*(r^2-u)")},
      {idx(1, 4), parse_expr("8*r*u^2*(r^2-u)")},
      {idx(3, 2), parse_expr("2*r*u*(u-r^2)")},
      {idx(4, 1), parse_expr("1/2*u*(u-r^2)")},
      {idx(0, 4), parse_expr("2*u^2*(2*r^2*(5*mu+2*p+17) - 10*u*(mu+p) - 4*beta*r^3 + 4*beta*r*u - 37*u)")},
      {idx(1, 3), parse_expr("8*r*u*(-2*u*(mu+p) + 2*(mu+2)*r^2 - 5*u)")},
      {idx(2, 2), parse_expr("3*u*(-2*(p+1)*r^2 + 2*beta*r^3 - 2*beta*r*u + u)")},
      {idx(3, 1), parse_expr("-2*(r^2-u)*(mu*r + r - beta*u)")},
      {idx(4, 0), parse_expr("1/8*(2*u*(mu+p) - 2*(mu+1)*r^2 + 3*u)")},
  };
}

DiffOp laplacian_cylindrical() {
  const auto* amb = cylindrical_context();
  std::vector<SymbolId> names{sym::r, sym::rho, sym::phi};
  std::vector<Expr> coords{Expr::symbol(sym::r, amb), Expr::symbol(sym::rho, amb), Expr::symbol(sym::phi, amb)};
  return laplace_beltrami(cometric_from_embedding(names, coords, amb), cylinder_spec());
}

GaugeData pipeline_gauge(int parity, bool with_exponential) {
  std::string p = std::to_string(parity);
  std::string wr = (with_exponential ? "-beta + " : "") + p + "*r/(r^2 - rho^2)";
  return GaugeData{{parse_expr(wr), parse_expr("mu/rho - " + p + "*rho/(r^2 - rho^2)"), Expr()}};
}

DiffOp derive_h(int parity, bool with_exponential) {
  const auto& cyl = cylinder_spec();
  DiffOp lap = laplacian_cylindrical();
  DiffOp k = parse_expr("-r/2") * lap - DiffOp::multiplication(cyl, parse_expr("E*r"));
  DiffOp h = conjugate(k, pipeline_gauge(parity, with_exponential));
  h = h.substitute({{sym::E, parse_expr("-beta^2/2")}});
  return project_angular(h, sym::phi, parse_expr("i*mu"), rrho_spec());
}

// ---------------------------------------------------------------------------
// Cubic algebra

namespace {

struct PrintedTerm {
  const char* coefficient;
  const char* word;  // product of h, l, b, c read left to right
};

const std::vector<PrintedTerm>& printed_terms(char which) {
  static const std::vector<PrintedTerm> cl{
      {"2", "lhh"},
      {"-8", "lb"},
      {"-4*beta^2", "ll"},
      {"-8*beta*(3*mu+2*p+7)", "lh"},
      {"-(mu+1)*(2*mu+2*p-1)", "hh"},
      {"2*beta^2*(11*mu^2 + mu*(20*p+38) + (p+1)*(9*p+26))", "l"},
      {"-4", "c"},
      {"(2*mu+2*p-1)*(2*mu+2*p+3)", "b"},
      {"beta*(2*mu+2*p-1)*(2*mu+2*p+3)*(3*mu+2*p+7)", "h"},
      {"-beta^2*(2*mu+2*p-1)*(mu*(mu*(5*mu+14*p+26) + 62*p + 41) + 66*p + 20)", ""},
  };
  static const std::vector<PrintedTerm> cb{
      {"-4*beta^2", "lhh"},
      {"-2", "bhh"},
      {"-2*beta*(3*mu+2*p+7)", "hhh"},
      {"4", "bb"},
      {"8*beta*(3*mu+2*p+7)", "bh"},
      {"8*beta^2", "lb"},
      {"8*beta^3*(3*mu+2*p+7)", "lh"},
      {"2*beta^2*(mu*(21*mu+30*p+94) + 76*p + 105)", "hh"},
      {"-2*beta^2*(mu*(11*mu+20*p+38) + 44*p + 26)", "b"},
      {"4*beta^2", "c"},
      {"-2*beta^3*(mu*(mu*(33*mu+82*p+191) + 4*(97*p+86)) + 448*p + 182)", "h"},
      {"-4*beta^4*(5*mu^2 + 2*mu*(4*p+9) + 4*(p+1)*(p+3))", "l"},
      {"2*beta^4*(mu+p+1)*(15*mu^3 + mu^2*(39*p+89) + 3*mu*(p*(74-11*p)+54) + p*(293 - p*(8*p+65)) + 84)", ""},
  };
  if (which == 'l') return cl;
  if (which == 'b') return cb;
  throw std::invalid_argument("cubic target must be 'l' or 'b'");
}

const DiffOp& letter(char c) {
  const auto& ops = named();
  switch (c) {
    case 'h':
      return ops.h_a;
    case 'l':
      return ops.l_a;
    case 'b':
      return ops.b_a;
    case 'c':
      return ops.c;
  }
  throw std::invalid_argument("unknown generator letter");
}

CubicMonomial sorted_word(const std::string& word) {
  CubicMonomial m;
  for (char ch : word) {
    if (ch == 'h') ++m.h;
    if (ch == 'l') ++m.l;
    if (ch == 'b') ++m.b;
    if (ch == 'c') ++m.c;
  }
  return m;
}

// Ordered products, memoized across calls.
const DiffOp& monomial_operator(const CubicMonomial& m) {
  static std::mutex mu;
  static std::map<std::array<unsigned, 4>, DiffOp> cache;
  std::array<unsigned, 4> key{m.h, m.l, m.b, m.c};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  DiffOp acc = DiffOp::identity(ru_spec());
  // Peel the last factor off so shorter products are reused.
  CubicMonomial prefix = m;
  char last = 0;
  if (m.c) {
    --prefix.c;
    last = 'c';
  } else if (m.b) {
    --prefix.b;
    last = 'b';
  } else if (m.l) {
    --prefix.l;
    last = 'l';
  } else if (m.h) {
    --prefix.h;
    last = 'h';
  }
  if (last) acc = compose(monomial_operator(prefix), letter(last));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(acc)).first->second;
}

DiffOp target_commutator(char which) {
  static std::mutex mu;
  static std::map<char, DiffOp> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(which);
    if (it != cache.end()) return it->second;
  }
  DiffOp t = commutator(named().c, which == 'l' ? named().l_a : named().b_a);
  std::lock_guard lock(mu);
  return cache.emplace(which, std::move(t)).first->second;
}

}  // namespace

std::string CubicMonomial::str() const {
  std::string s;
  auto put = [&](const char* name, unsigned e) {
    if (!e) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  };
  put("h", h);
  put("l", l);
  put("b", b);
  put("c", c);
  return s.empty() ? "1" : s;
}

DiffOp cubic_rhs_as_printed(char which) {
  DiffOp out(ru_spec());
  for (const auto& t : printed_terms(which)) {
    DiffOp prod = DiffOp::identity(ru_spec());
    for (const char* w = t.word; *w; ++w) prod = compose(prod, letter(*w));
    out += parse_expr(t.coefficient) * prod;
  }
  return out;
}

std::vector<std::pair<std::string, Expr>> printed_cubic_coefficients(char which) {
  std::vector<std::pair<std::string, Expr>> out;
  for (const auto& t : printed_terms(which)) out.emplace_back(sorted_word(t.word).str(), parse_expr(t.coefficient));
  return out;
}

CubicDecomposition decompose_cubic(char which, unsigned max_degree, unsigned param_degree,
                                   std::optional<int> parity) {
  std::map<SymbolId, Expr> fix;
  if (parity) fix[sym::p] = Expr(*parity);
  auto at_parity = [&](const DiffOp& a) { return parity ? a.substitute(fix) : a; };
  DiffOp target = at_parity(target_commutator(which));
  std::vector<SymbolId> free_params{sym::mu};
  if (!parity) free_params.push_back(sym::p);
  int target_weight = which == 'l' ? -2 : -4;
  std::vector<CubicMonomial> monomials;
  std::vector<DiffOp> basis;
  std::vector<std::vector<Monomial>> allowed;
  for (unsigned deg = 0; deg <= max_degree; ++deg)
    for (unsigned h = 0; h <= deg; ++h)
      for (unsigned l = 0; h + l <= deg; ++l)
        for (unsigned b = 0; h + l + b <= deg; ++b) {
          CubicMonomial m{h, l, b, deg - h - l - b};
          int beta_power = m.weight() - target_weight;
          if (beta_power < 0 || m.order() > target.order()) continue;
          std::vector<Monomial> params;
          for (const auto& pm : parameter_monomials(free_params, param_degree)) {
            Monomial t = pm;
            t.set(sym::beta, static_cast<unsigned>(beta_power));
            params.push_back(t);
          }
          monomials.push_back(m);
          basis.push_back(at_parity(monomial_operator(m)));
          allowed.push_back(std::move(params));
        }
  CubicDecomposition dec{std::move(monomials), solve_combination(basis, target, allowed), {}};
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!dec.combination.coefficients[j].is_zero())
      dec.table.emplace_back(dec.monomials[j].str(), dec.combination.coefficients[j].str());
  return dec;
}

// ---------------------------------------------------------------------------
// Checks

CheckReport check_pipeline(int parity, const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("2d.pipeline.p" + std::to_string(parity), bindings);
  DiffOp expected = h_operator().substitute({{sym::p, Expr(parity)}});
  cb.expect_equal("h", derive_h(parity), expected);
  return cb.finish();
}

CheckReport check_relate_h_ha(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("2d.relate", bindings);
  DiffOp mapped = change_variables(h_a(), rrho_spec(), {{sym::u, parse_expr("rho^2")}});
  cb.expect_equal("h_a(u=rho^2) - h", mapped, h_operator());
  return cb.finish();
}

CheckReport check_c_leading(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("2d.c.leading", bindings);
  const DiffOp& c = named().c;
  if (c.order() != 5) cb.fail("order", std::to_string(c.order()));
  std::size_t undisplayed = 0;
  auto displayed = c_leading_terms();
  for (const auto& [idx, want] : displayed)
    cb.expect_equal("coefficient of " + c.index_str(idx), c.coefficient(idx), want);
  for (const auto& [idx, coef] : c.terms()) {
    if (idx.order() < 4) continue;
    bool shown = std::any_of(displayed.begin(), displayed.end(), [&](const auto& d) { return d.first == idx; });
    if (!shown) ++undisplayed;
  }
  std::size_t low = 0;
  for (const auto& [idx, coef] : c.terms())
    if (idx.order() <= 3) ++low;
  cb.note("c has " + std::to_string(c.terms().size()) + " terms; " + std::to_string(low) +
          " of order <= 3 are recorded, not checked");
  if (undisplayed) cb.note(std::to_string(undisplayed) + " order-4/5 terms of c are absent from the display");
  return cb.finish();
}

namespace {

bool vanishes_at_parities(const DiffOp& residual) {
  for (int parity : {0, 1})
    if (!residual.substitute({{sym::p, Expr(parity)}}).is_zero()) return false;
  return true;
}

void expect_zero_noting_parity(CheckBuilder& cb, const std::string& label, const DiffOp& residual) {
  if (!cb.expect_zero(label, residual) && vanishes_at_parities(cb.specialize(residual)))
    cb.note(label + " vanishes modulo p^2 = p (p = 0 and p = 1) but not for symbolic p");
}

void diff_against_printed(CheckBuilder& cb, char which, const CubicDecomposition& dec, std::optional<int> parity) {
  auto printed = printed_cubic_coefficients(which);
  std::string where = parity ? " at p=" + std::to_string(*parity) : "";
  std::size_t agree = 0;
  for (std::size_t j = 0; j < dec.monomials.size(); ++j) {
    std::string key = dec.monomials[j].str();
    Expr want;
    for (const auto& [k, v] : printed)
      if (k == key) want += v;
    if (parity) want = want.substitute(sym::p, Expr(*parity));
    want = cb.specialize(want);
    Expr got = cb.specialize(dec.combination.coefficients[j]);
    if (got.is_zero() && want.is_zero()) continue;
    if (got == want) {
      ++agree;
    } else {
      cb.note("coefficient of " + key + where + ": solved " + got.str() + ", printed " + want.str());
    }
  }
  cb.note(std::to_string(agree) + " solved coefficients" + where + " agree with the printed ones");
}

}  // namespace

CheckReport check_integrals(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("2d.integrals", bindings);
  const auto& ops = named();
  expect_zero_noting_parity(cb, "[h_a, l_a]", commutator(ops.h_a, ops.l_a));
  expect_zero_noting_parity(cb, "[h_a, b_a]", commutator(ops.h_a, ops.b_a));
  expect_zero_noting_parity(cb, "[h_a, c]", commutator(ops.h_a, ops.c));
  return cb.finish();
}

CheckReport check_cubic(char which, const std::map<SymbolId, Expr>& bindings) {
  std::string target = which == 'l' ? "l_a" : "b_a";
  CheckBuilder cb(std::string("2d.cubic.") + which, bindings);
  bool p_bound = bindings.count(sym::p) > 0;

  DiffOp diff = cb.specialize(target_commutator(which) - cubic_rhs_as_printed(which));
  if (diff.is_zero()) {
    cb.note("printed right-hand side agrees exactly");
  } else if (!p_bound && vanishes_at_parities(diff)) {
    cb.note("printed right-hand side agrees modulo p^2 = p");
  } else {
    cb.note("printed right-hand side differs from [c, " + target + "] in " + std::to_string(diff.terms().size()) +
            " derivative terms, highest order " + std::to_string(diff.order()));
  }

  std::optional<int> fixed;
  if (p_bound && cb.specialize(Expr::symbol(sym::p)).is_constant()) {
    Scalar v = cb.specialize(Expr::symbol(sym::p)).constant_value();
    if (v.is_zero() || v.is_one()) fixed = v.is_zero() ? 0 : 1;
  }
  CubicDecomposition dec = decompose_cubic(which, 3, 4, fixed);
  cb.note("solver: " + std::to_string(dec.combination.unknowns) + " unknowns, " +
          std::to_string(dec.combination.equations) + " equations");
  if (dec.combination.exact) {
    diff_against_printed(cb, which, dec, fixed);
    return cb.finish();
  }
  if (fixed) {
    cb.expect_zero("decomposition residual", dec.combination.residual);
    return cb.finish();
  }
  // No symbolic solution: retry at each parity.
  std::vector<CubicDecomposition> per_parity;
  for (int parity : {0, 1}) per_parity.push_back(decompose_cubic(which, 3, 4, parity));
  bool both = per_parity[0].combination.exact && per_parity[1].combination.exact;
  if (!both) {
    cb.expect_zero("decomposition residual", dec.combination.residual);
    return cb.finish();
  }
  cb.note("no decomposition for symbolic p; one exists at p = 0 and at p = 1, so the relation holds modulo p^2 = p");
  for (int parity : {0, 1}) diff_against_printed(cb, which, per_parity[parity], parity);
  return cb.finish();
}

CheckReport check_spectrum(unsigned max_n, const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("2d.spectrum", bindings);
  DiffOp h = cb.specialize(h_a());
  auto eig = [&](unsigned k) { return cb.specialize(alpha(k)); };
  std::map<SymbolId, Expr> point{{sym::beta, parse_expr("7/3")}, {sym::mu, parse_expr("5/11")},
                                 {sym::p, parse_expr("2/13")}};
  for (const auto& [s, v] : bindings) point[s] = v;
  for (unsigned n = 0; n <= max_n; ++n) {
    SpectralReport rep = verify_spectrum(h, n, eig);
    if (!rep.pass) cb.fail("n=" + std::to_string(n), "char_poly " + rep.char_poly.str());
    std::size_t total = 0;
    for (unsigned k = 0; k <= n; ++k) total += eigenpolynomials(h, n, k, eig, point).size();
    if (total != MonomialBasis::dimension(n))
      cb.fail("n=" + std::to_string(n), "kernel dimensions sum to " + std::to_string(total));
  }
  return cb.finish();
}

CheckReport check_flag_invariance(unsigned max_n, const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("2d.flag", bindings);
  const auto& ops = named();
  std::vector<std::pair<std::string, const DiffOp*>> list{
      {"h_a", &ops.h_a}, {"l_a", &ops.l_a}, {"b_a", &ops.b_a}, {"c", &ops.c}};
  for (const auto& [name, a] : list)
    for (unsigned n = 0; n <= max_n; ++n) {
      InvarianceResult res = is_invariant(cb.specialize(*a), n);
      if (!res.invariant)
        cb.fail(name + " on P_" + std::to_string(n),
                res.witness->first.str() + " -> " + res.witness->second.str());
    }
  return cb.finish();
}

}  // namespace opcalc::coulomb2d
