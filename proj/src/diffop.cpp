#include "opcalc/diffop.hpp"

#include <algorithm>
#include <stdexcept>

namespace opcalc {

std::shared_ptr<const VariableSpec> VariableSpec::make(std::string name, std::vector<SymbolId> vars,
                                                       std::vector<SymbolId> params,
                                                       const AlgebraicContext* ctx) {
  if (vars.empty() || vars.size() > kMaxSpaceVars) throw std::invalid_argument("1 to 3 space variables required");
  for (auto v : vars)
    if (std::find(params.begin(), params.end(), v) != params.end())
      throw std::invalid_argument("space variable listed as a parameter");
  if (ctx && ctx->base() != vars) throw std::invalid_argument("context base must equal the space variables");
  auto spec = std::make_shared<VariableSpec>();
  spec->name_ = std::move(name);
  spec->vars_ = std::move(vars);
  spec->params_ = std::move(params);
  spec->ctx_ = ctx;
  return spec;
}

int VariableSpec::index_of(SymbolId s) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == s) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------

DerivIndex DerivIndex::unit(std::size_t var, unsigned k) {
  DerivIndex d;
  d.set(var, k);
  return d;
}

void DerivIndex::set(std::size_t var, unsigned k) {
  unsigned total = bytes_[0] - bytes_[1 + var] + k;
  if (total > 255) throw std::overflow_error("derivative order overflow");
  bytes_[1 + var] = static_cast<std::uint8_t>(k);
  bytes_[0] = static_cast<std::uint8_t>(total);
}

DerivIndex DerivIndex::operator+(const DerivIndex& o) const {
  DerivIndex d;
  for (std::size_t i = 0; i < bytes_.size(); ++i) {
    unsigned v = unsigned(bytes_[i]) + o.bytes_[i];
    if (v > 255) throw std::overflow_error("derivative order overflow");
    d.bytes_[i] = static_cast<std::uint8_t>(v);
  }
  return d;
}

DerivIndex DerivIndex::operator-(const DerivIndex& o) const {
  DerivIndex d;
  for (std::size_t i = 0; i < bytes_.size(); ++i) d.bytes_[i] = static_cast<std::uint8_t>(bytes_[i] - o.bytes_[i]);
  return d;
}

bool DerivIndex::le(const DerivIndex& o) const {
  for (std::size_t i = 1; i < bytes_.size(); ++i)
    if (bytes_[i] > o.bytes_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// Sums many expressions at once; all-polynomial input is merged with one sort.
Expr sum_exprs(std::vector<Expr>& parts) {
  if (parts.empty()) return Expr();
  if (parts.size() == 1) return parts[0];
  bool poly = true;
  const AlgebraicContext* ctx = nullptr;
  for (const auto& e : parts) {
    if (!e.is_polynomial()) poly = false;
    if (e.context()) ctx = e.context();
  }
  if (poly) {
    std::vector<MultiPoly::Term> acc;
    for (const auto& e : parts)
      for (const auto& t : e.num().terms()) acc.push_back(t);
    return Expr(MultiPoly::from_terms(std::move(acc)), ctx);
  }
  while (parts.size() > 1) {
    std::vector<Expr> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts[0];
}

long binomial(unsigned n, unsigned k) {
  long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All multi-indices g <= a (componentwise), over `nvars` variables.
std::vector<DerivIndex> sub_indices(const DerivIndex& a, std::size_t nvars) {
  std::vector<DerivIndex> out{DerivIndex()};
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<DerivIndex> next;
    for (const auto& g : out)
      for (unsigned k = 0; k <= a[v]; ++k) {
        DerivIndex h = g;
        h.set(v, k);
        next.push_back(h);
      }
    out = std::move(next);
  }
  return out;
}

// Memoized mixed partials of a single expression.
class DerivativeCache {
 public:
  DerivativeCache(const Expr& f, const VariableSpec& spec) : spec_(spec) { cache_.emplace(DerivIndex(), f); }

  const Expr& get(const DerivIndex& idx) {
    auto it = cache_.find(idx);
    if (it != cache_.end()) return it->second;
    std::size_t v = 0;
    while (idx[v] == 0) ++v;
    DerivIndex lower = idx;
    lower.set(v, idx[v] - 1);
    Expr d = get(lower).derivative(spec_.vars()[v]);
    return cache_.emplace(idx, std::move(d)).first->second;
  }

 private:
  const VariableSpec& spec_;
  std::map<DerivIndex, Expr> cache_;
};

}  // namespace

DiffOp DiffOp::multiplication(SpecPtr spec, const Expr& f) {
  DiffOp op(std::move(spec));
  op.add_term(DerivIndex(), f.with_context(op.spec_->context()));
  return op;
}

DiffOp DiffOp::derivative(SpecPtr spec, SymbolId var, unsigned k) {
  int i = spec->index_of(var);
  if (i < 0) throw std::invalid_argument("'" + symbols::name(var) + "' is not a space variable of " + spec->name());
  DiffOp op(std::move(spec));
  op.add_term(DerivIndex::unit(static_cast<std::size_t>(i), k), Expr(1));
  return op;
}

Expr DiffOp::coefficient(const DerivIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Expr() : it->second;
}

void DiffOp::add_term(const DerivIndex& idx, const Expr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DiffOp::check_same_spec(const DiffOp& o) const {
  if (spec_ != o.spec_ && (spec_->vars() != o.spec_->vars() || spec_->context() != o.spec_->context()))
    throw std::invalid_argument("operators over different variable specs ('" + spec_->name() + "' vs '" +
                                o.spec_->name() + "')");
}

DiffOp DiffOp::operator-() const {
  DiffOp out(spec_);
  for (const auto& [idx, c] : terms_) out.terms_.emplace(idx, -c);
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  check_same_spec(o);
  for (const auto& [idx, c] : o.terms_) add_term(idx, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  check_same_spec(o);
  for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
  return *this;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) { return compose(a, b); }

DiffOp operator*(const Expr& f, const DiffOp& a) {
  DiffOp out(a.spec_);
  if (f.is_zero()) return out;
  for (const auto& [idx, c] : a.terms_) {
    Expr p = f * c;
    if (!p.is_zero()) out.terms_.emplace(idx, std::move(p));
  }
  return out;
}

DiffOp DiffOp::substitute(const std::map<SymbolId, Expr>& values) const {
  for (const auto& [s, v] : values)
    if (spec_->index_of(s) >= 0) throw std::invalid_argument("cannot substitute a space variable");
  return map_coefficients([&](const Expr& c) { return c.substitute(values, spec_->context()); });
}

DiffOp DiffOp::rebase(SpecPtr target) const {
  DiffOp out(target);
  for (const auto& [idx, c] : terms_) {
    DerivIndex mapped;
    for (std::size_t v = 0; v < spec_->vars().size(); ++v) {
      if (idx[v] == 0) continue;
      int j = target->index_of(spec_->vars()[v]);
      if (j < 0)
        throw std::invalid_argument("variable '" + symbols::name(spec_->vars()[v]) + "' is absent from " +
                                    target->name());
      mapped.set(static_cast<std::size_t>(j), idx[v]);
    }
    out.add_term(mapped, c.with_context(target->context()));
  }
  return out;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  a.check_same_spec(b);
  const auto& spec = *a.spec();
  std::size_t nv = spec.vars().size();
  std::map<DerivIndex, std::vector<Expr>, std::greater<>> acc;
  std::map<DerivIndex, std::vector<DerivIndex>> subs;
  for (const auto& [ai, ac] : a.terms()) subs.emplace(ai, sub_indices(ai, nv));

  for (const auto& [bi, bc] : b.terms()) {
    DerivativeCache dcache(bc, spec);
    for (const auto& [ai, ac] : a.terms()) {
      for (const auto& g : subs.at(ai)) {
        const Expr& db = dcache.get(g);
        if (db.is_zero()) continue;
        long binom = 1;
        for (std::size_t v = 0; v < nv; ++v) binom *= binomial(ai[v], g[v]);
        Expr term = ac * db;
        if (binom != 1) term *= Expr(binom);
        acc[ai - g + bi].push_back(std::move(term));
      }
    }
  }
  DiffOp out(a.spec());
  for (auto& [idx, parts] : acc) out.add_term(idx, sum_exprs(parts));
  return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

Expr apply(const DiffOp& a, const Expr& f) {
  DerivativeCache dcache(f.with_context(a.spec()->context()), *a.spec());
  std::vector<Expr> parts;
  for (const auto& [idx, c] : a.terms()) {
    const Expr& d = dcache.get(idx);
    if (!d.is_zero()) parts.push_back(c * d);
  }
  return sum_exprs(parts);
}

DiffOp conjugate(const DiffOp& a, const GaugeData& g) {
  const auto& spec = a.spec();
  std::size_t nv = spec->vars().size();
  if (g.log_gradient.size() != nv) throw std::invalid_argument("log-gradient length must match the space variables");
  std::vector<Expr> w;
  for (const auto& e : g.log_gradient) w.push_back(e.with_context(spec->context()));
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      if (!(w[j].derivative(spec->vars()[i]) == w[i].derivative(spec->vars()[j])))
        throw std::invalid_argument("gauge log-gradient is not closed");

  // Shifted derivations d_v + w_v and their powers.
  std::vector<std::vector<DiffOp>> powers(nv);
  auto power = [&](std::size_t v, unsigned k) -> const DiffOp& {
    auto& p = powers[v];
    if (p.empty()) p.push_back(DiffOp::identity(spec));
    while (p.size() <= k) {
      DiffOp shifted = DiffOp::derivative(spec, spec->vars()[v]) + DiffOp::multiplication(spec, w[v]);
      p.push_back(compose(shifted, p.back()));
    }
    return p[k];
  };
  DiffOp out(spec);
  for (const auto& [idx, c] : a.terms()) {
    DiffOp prod = DiffOp::identity(spec);
    for (std::size_t v = 0; v < nv; ++v)
      if (idx[v] > 0) prod = compose(prod, power(v, idx[v]));
    out += c * prod;
  }
  return out;
}

namespace {

// Inverse of a small square matrix of expressions; nullopt when singular.
std::optional<std::vector<std::vector<Expr>>> invert(std::vector<std::vector<Expr>> m) {
  std::size_t n = m.size();
  std::vector<std::vector<Expr>> inv(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expr(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Expr scale = Expr(1) / m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] *= scale;
      inv[col][k] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Expr f = m[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace

DiffOp change_variables(const DiffOp& a, const SpecPtr& target, const std::map<SymbolId, Expr>& old_in_new) {
  const auto& old_vars = a.spec()->vars();
  const auto& new_vars = target->vars();
  if (old_vars.size() != new_vars.size()) throw std::invalid_argument("charts must have equal dimension");
  std::size_t n = old_vars.size();
  std::map<SymbolId, Expr> subst;
  for (auto v : old_vars) {
    auto it = old_in_new.find(v);
    if (it != old_in_new.end()) {
      subst[v] = it->second.with_context(target->context());
    } else if (target->index_of(v) >= 0) {
      subst[v] = Expr::symbol(v, target->context());
    } else {
      throw std::invalid_argument("no expression given for '" + symbols::name(v) + "'");
    }
  }
  // jt[j][i] = d old_i / d new_j, so d_new = jt * d_old.
  std::vector<std::vector<Expr>> jt(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jt[j][i] = subst[old_vars[i]].derivative(new_vars[j]);
  auto inv = invert(jt);
  if (!inv) throw std::invalid_argument("change of variables has a singular Jacobian");

  std::vector<DiffOp> d_old;
  for (std::size_t i = 0; i < n; ++i) {
    DiffOp d(target);
    for (std::size_t j = 0; j < n; ++j) d.add_term(DerivIndex::unit(j), (*inv)[i][j]);
    d_old.push_back(std::move(d));
  }
  std::vector<std::vector<DiffOp>> powers(n);
  auto power = [&](std::size_t v, unsigned k) -> const DiffOp& {
    auto& p = powers[v];
    if (p.empty()) p.push_back(DiffOp::identity(target));
    while (p.size() <= k) p.push_back(compose(d_old[v], p.back()));
    return p[k];
  };
  DiffOp out(target);
  for (const auto& [idx, c] : a.terms()) {
    DiffOp prod = DiffOp::identity(target);
    for (std::size_t v = 0; v < n; ++v)
      if (idx[v] > 0) prod = compose(prod, power(v, idx[v]));
    out += c.substitute(subst, target->context()) * prod;
  }
  return out;
}

DiffOp project_angular(const DiffOp& a, SymbolId angle, const Expr& charge, const SpecPtr& target) {
  int ai = a.spec()->index_of(angle);
  if (ai < 0) throw std::invalid_argument("angle is not a space variable");
  DiffOp out(target);
  for (const auto& [idx, c] : a.terms()) {
    if (c.contains(angle)) throw std::invalid_argument("coefficient depends on the separated angle");
    DerivIndex mapped;
    for (std::size_t v = 0; v < a.spec()->vars().size(); ++v) {
      if (static_cast<int>(v) == ai || idx[v] == 0) continue;
      int j = target->index_of(a.spec()->vars()[v]);
      if (j < 0) throw std::invalid_argument("target spec lacks a variable of the operator");
      mapped.set(static_cast<std::size_t>(j), idx[v]);
    }
    Expr coef = c * charge.pow(static_cast<int>(idx[static_cast<std::size_t>(ai)]));
    out.add_term(mapped, coef.with_context(target->context()));
  }
  for (const auto& [idx, c] : out.terms())
    if (!c.is_real()) throw std::domain_error("imaginary part survives angular projection");
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string coefficient_str(const Expr& c) {
  if (c.is_polynomial()) {
    if (c.num().size() == 1) return c.num().str();
    return "(" + c.num().str() + ")";
  }
  return "(" + c.num().str() + ")/(" + c.den().str() + ")";
}

}  // namespace

std::string DiffOp::index_str(const DerivIndex& idx) const {
  std::string s;
  for (std::size_t v = 0; v < spec_->vars().size(); ++v) {
    if (idx[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += "D[" + symbols::name(spec_->vars()[v]) + "]";
    if (idx[v] > 1) s += "^" + std::to_string(idx[v]);
  }
  return s;
}

std::vector<std::string> DiffOp::term_strings() const {
  std::vector<std::string> out;
  for (const auto& [idx, c] : terms_) {
    std::string d = index_str(idx);
    std::string cs = coefficient_str(c);
    if (d.empty()) {
      out.push_back(cs);
    } else if (c == Expr(1)) {
      out.push_back(d);
    } else if (c == Expr(-1)) {
      out.push_back("-" + d);
    } else {
      out.push_back(cs + "*" + d);
    }
  }
  return out;
}

std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : term_strings()) {
    if (s.empty()) {
      s = t;
    } else if (t[0] == '-') {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

}  // namespace opcalc
