#include "opcalc/coulomb3d.hpp"

#include <mutex>

#include "opcalc/parser.hpp"
#include "opcalc/rings.hpp"

namespace opcalc::coulomb3d {

namespace sym = symbols;

namespace {

constexpr const char* kAxis[3] = {"x", "y", "z"};

// epsilon_{ijk} for distinct i, j: returns k and the sign.
std::pair<int, int> levi_civita(int i, int j) {
  int k = 3 - i - j;
  int sign = ((j - i + 3) % 3 == 1) ? 1 : -1;
  return {k, sign};
}

Expr imag(long k) { return Expr(Scalar(Rational(0), Rational(k))); }

DiffOp op(const std::string& text) { return parse_operator(text, cartesian_spec()); }

Expr ex(const std::string& text) { return parse_expr(text, cartesian_context()); }

DiffOp mul(const std::string& text) { return DiffOp::multiplication(cartesian_spec(), ex(text)); }

VectorOp cross(const VectorOp& a, const VectorOp& b) {
  VectorOp out{DiffOp(cartesian_spec()), DiffOp(cartesian_spec()), DiffOp(cartesian_spec())};
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    out[i] = compose(a[j], b[k]) - compose(a[k], b[j]);
  }
  return out;
}

DiffOp dot(const VectorOp& a, const VectorOp& b) {
  DiffOp out(cartesian_spec());
  for (int i = 0; i < 3; ++i) out += compose(a[i], b[i]);
  return out;
}

VectorOp momentum() { return {op("-i*D[x]"), op("-i*D[y]"), op("-i*D[z]")}; }

std::string label(const char* name, int i, int j) {
  return std::string("[") + name[0] + "_" + kAxis[i] + ", " + name[1] + "_" + kAxis[j] + "]";
}

}  // namespace

const SpecPtr& cartesian_spec() {
  static const SpecPtr s =
      VariableSpec::make("x,y,z", {sym::x, sym::y, sym::z}, {sym::alpha, sym::E, sym::beta}, cartesian_context());
  return s;
}

DiffOp hamiltonian() { return op("-1/2*D[x]^2 - 1/2*D[y]^2 - 1/2*D[z]^2 - alpha/r"); }

DiffOp k_operator() { return op("-r/2*D[x]^2 - r/2*D[y]^2 - r/2*D[z]^2 - E*r"); }

VectorOp angular_momentum() {
  return {op("-i*(y*D[z] - z*D[y])"), op("-i*(z*D[x] - x*D[z])"), op("-i*(x*D[y] - y*D[x])")};
}

VectorOp symmetrized_cross() {
  VectorOp p = momentum(), l = angular_momentum();
  VectorOp pl = cross(p, l), lp = cross(l, p);
  VectorOp out = pl;
  for (int i = 0; i < 3; ++i) out[i] = Expr(Scalar(Rational(1, 2))) * (pl[i] - lp[i]);
  return out;
}

VectorOp runge_lenz() {
  VectorOp a = symmetrized_cross();
  for (int i = 0; i < 3; ++i) a[i] -= mul(std::string("alpha*") + kAxis[i] + "/r");
  return a;
}

const std::vector<BCandidate>& b_candidates() {
  static const std::vector<BCandidate> all = [] {
    VectorOp base = symmetrized_cross();
    DiffOp h = hamiltonian(), k = k_operator();
    Expr half(Scalar(Rational(1, 2)));
    std::vector<BCandidate> out;
    auto build = [&](std::string lbl, std::string desc, const char* scale, const DiffOp& factor, int mode) {
      VectorOp b = base;
      for (int i = 0; i < 3; ++i) {
        DiffOp f = mul(std::string(scale) + "*" + kAxis[i] + "/r");
        DiffOp term = mode == 0   ? compose(f, factor)
                      : mode == 1 ? compose(factor, f)
                                  : half * (compose(f, factor) + compose(factor, f));
        b[i] -= term;
      }
      out.push_back({std::move(lbl), std::move(desc), std::move(b)});
    };
    build("printed-right", "(alpha/r) x_i composed with H on the right", "alpha", h, 0);
    build("printed-left", "H composed with (alpha/r) x_i on the right", "alpha", h, 1);
    build("printed-sym", "symmetrized (alpha/r) x_i H", "alpha", h, 2);
    build("cm-right", "alpha replaced by K: (x_i/r) K", "1", k, 0);
    build("cm-left", "alpha replaced by K: K (x_i/r)", "1", k, 1);
    build("cm-sym", "alpha replaced by K, symmetrized", "1", k, 2);
    return out;
  }();
  return all;
}

CheckReport check_eq7(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.eq7", bindings);
  DiffOp lhs = mul("r") * (hamiltonian() - mul("E"));
  cb.expect_equal("r(H - E) - (K - alpha)", lhs, k_operator() - mul("alpha"));
  return cb.finish();
}

CheckReport check_h_integrals(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.integrals.H", bindings);
  DiffOp h = hamiltonian();
  VectorOp l = angular_momentum(), a = runge_lenz();
  for (int i = 0; i < 3; ++i) {
    cb.expect_zero(std::string("[L_") + kAxis[i] + ", H]", commutator(l[i], h));
    cb.expect_zero(std::string("[A_") + kAxis[i] + ", H]", commutator(a[i], h));
  }
  return cb.finish();
}

CheckReport check_eq4(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.eq4", bindings);
  VectorOp l = angular_momentum(), a = runge_lenz();
  DiffOp l2p1 = dot(l, l) + mul("1");
  cb.expect_equal("A^2 - alpha^2 - 2H(L^2 + 1)", dot(a, a), mul("alpha^2") + Expr(2) * compose(hamiltonian(), l2p1));
  return cb.finish();
}

CheckReport check_eq5(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.eq5", bindings);
  VectorOp l = angular_momentum(), a = runge_lenz();
  cb.expect_zero("L.A", dot(l, a));
  cb.expect_zero("A.L", dot(a, l));
  return cb.finish();
}

CheckReport check_eq6(const std::string& which, const std::map<SymbolId, Expr>& bindings) {
  if (which != "LL" && which != "AL" && which != "AA") throw std::invalid_argument("eq6 part must be LL, AL or AA");
  CheckBuilder cb("3d.eq6." + which, bindings);
  VectorOp l = angular_momentum();
  VectorOp a = which == "LL" ? l : runge_lenz();
  const VectorOp& second = which == "AA" ? a : l;
  DiffOp h = hamiltonian();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (which != "AL" && j <= i) continue;
      DiffOp c = commutator(a[i], second[j]);
      DiffOp want(cartesian_spec());
      if (i != j) {
        auto [k, sign] = levi_civita(i, j);
        if (which == "AA") {
          want = imag(-2 * sign) * compose(l[k], h);
        } else {
          want = imag(sign) * a[k];
        }
      }
      cb.expect_equal(label(which.c_str(), i, j), c, want);
    }
  return cb.finish();
}

CheckReport check_lk(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.LK", bindings);
  DiffOp k = k_operator();
  VectorOp l = angular_momentum();
  for (int i = 0; i < 3; ++i) cb.expect_zero(std::string("[L_") + kAxis[i] + ", K]", commutator(l[i], k));
  return cb.finish();
}

CheckReport check_b_candidate(const BCandidate& cand, const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.B." + cand.label, bindings);
  cb.note(cand.description);
  const VectorOp& b = cand.b;
  VectorOp l = angular_momentum();
  DiffOp k = k_operator();
  for (int i = 0; i < 3; ++i) cb.expect_zero(std::string("[B_") + kAxis[i] + ", K]", commutator(b[i], k));
  DiffOp l2p1 = dot(l, l) + mul("1");
  cb.expect_equal("B^2 - K^2 - 2E(L^2 + 1)", dot(b, b), compose(k, k) + Expr(2) * mul("E") * l2p1);
  cb.expect_zero("L.B", dot(l, b));
  cb.expect_zero("B.L", dot(b, l));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      DiffOp want(cartesian_spec());
      if (i != j) want = imag(levi_civita(i, j).second) * b[levi_civita(i, j).first];
      cb.expect_equal(label("BL", i, j), commutator(b[i], l[j]), want);
    }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto [kk, sign] = levi_civita(i, j);
      cb.expect_equal(label("BB", i, j), commutator(b[i], b[j]), imag(-2 * sign) * mul("E") * l[kk]);
    }
  return cb.finish();
}

std::string passing_b_candidate() {
  static std::once_flag once;
  static std::string found;
  std::call_once(once, [] {
    for (const auto& c : b_candidates())
      if (check_b_candidate(c).status == Status::Pass) {
        found = c.label;
        return;
      }
  });
  return found;
}

CheckReport check_b_sweep(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.B", bindings);
  bool any = false;
  for (const auto& c : b_candidates()) {
    CheckReport r = check_b_candidate(c, bindings);
    bool ok = r.status == Status::Pass;
    any = any || ok;
    cb.note(c.label + ": " + (ok ? "all identities hold" : std::to_string(r.residual_terms) + " residual terms"));
  }
  if (!any) cb.fail("B candidates", "no ordering satisfies every identity");
  return cb.finish();
}

CheckReport check_so4(const std::map<SymbolId, Expr>& bindings) {
  CheckBuilder cb("3d.so4", bindings);
  std::string lbl = passing_b_candidate();
  if (lbl.empty()) {
    cb.fail("B", "no passing candidate to rescale");
    return cb.finish();
  }
  cb.note("using B candidate " + lbl);
  VectorOp bt = angular_momentum();
  std::map<SymbolId, Expr> energy{{sym::E, ex("-beta^2/2")}};
  Expr inv_beta = ex("1/beta");
  for (const auto& c : b_candidates())
    if (c.label == lbl)
      for (int i = 0; i < 3; ++i) bt[i] = inv_beta * c.b[i].substitute(energy);
  VectorOp l = angular_momentum();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto want = [&](const VectorOp& v) {
        if (i == j) return DiffOp(cartesian_spec());
        auto [k, sign] = levi_civita(i, j);
        return imag(sign) * v[k];
      };
      if (j > i) cb.expect_equal(label("LL", i, j), commutator(l[i], l[j]), want(l));
      cb.expect_equal("[B~_" + std::string(kAxis[i]) + ", L_" + kAxis[j] + "]", commutator(bt[i], l[j]), want(bt));
      if (j > i)
        cb.expect_equal("[B~_" + std::string(kAxis[i]) + ", B~_" + kAxis[j] + "]", commutator(bt[i], bt[j]), want(l));
    }
  return cb.finish();
}

}  // namespace opcalc::coulomb3d
