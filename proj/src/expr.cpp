#include "opcalc/expr.hpp"

#include <stdexcept>
#include <vector>

namespace opcalc {

Expr::Expr(const MultiPoly& num, const AlgebraicContext* ctx)
    : num_(ctx ? ctx->reduce(num) : num), den_(1), ctx_(ctx) {}

const AlgebraicContext* Expr::merge_context(const AlgebraicContext* a, const AlgebraicContext* b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw std::invalid_argument("cannot combine expressions from contexts '" + a->name() + "' and '" +
                              b->name() + "'");
}

Expr Expr::with_context(const AlgebraicContext* ctx) const { return fraction(num_, den_, ctx); }

Expr Expr::symbol(SymbolId s, const AlgebraicContext* ctx) { return Expr(MultiPoly::var(s), ctx); }

Expr Expr::fraction(const MultiPoly& num, const MultiPoly& den, const AlgebraicContext* ctx) {
  MultiPoly n = ctx ? ctx->reduce(num) : num;
  MultiPoly d = ctx ? ctx->reduce(den) : den;
  if (d.is_zero()) throw std::domain_error("zero denominator");
  if (!d.is_real()) {
    MultiPoly c = d.conj();
    n = n * c;
    d = d * c;
    if (ctx) {
      n = ctx->reduce(n);
      d = ctx->reduce(d);
    }
  }
  if (ctx) {
    while (std::uint32_t hit = d.symbol_mask() & ctx->rewritten_mask()) {
      SymbolId s = 0;
      while (!(hit & (1u << s))) ++s;
      // d = a + b*s  ->  multiply through by a - b*s.
      auto coeffs = d.coefficients_in(s);
      MultiPoly conjugate = coeffs[0] - coeffs[1].mul_monomial(Monomial::var(s));
      n = ctx->reduce(n * conjugate);
      d = ctx->reduce(d * conjugate);
      if (d.is_zero()) throw std::domain_error("denominator is a zero divisor");
    }
  }
  Expr e(std::move(n), std::move(d), ctx, 0);
  e.cancel();
  return e;
}

void Expr::cancel() {
  if (den_.is_one()) return;
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g;
    if (den_.is_monomial()) {
      g = MultiPoly::term(Monomial::gcd(num_.monomial_content(), den_.leading().first), Scalar(1));
    } else {
      g = MultiPoly::gcd(den_, num_.real_part());
      if (!g.is_constant() && !num_.is_real()) g = MultiPoly::gcd(g, num_.imag_part());
    }
    if (!g.is_constant()) {
      if (g.is_monomial()) {
        num_ = num_.div_monomial(g.leading().first);
        den_ = den_.div_monomial(g.leading().first);
      } else {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
      }
    }
  }
  Scalar lc = den_.leading().second;
  if (!lc.is_one()) {
    Scalar inv = Scalar(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Expr Expr::operator-() const { return Expr(-num_, den_, ctx_, 0); }

Expr& Expr::operator+=(const Expr& o) {
  ctx_ = merge_context(ctx_, o.ctx_);
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) {
    num_ = o.num_;
    den_ = o.den_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else if (o.den_.is_one()) {
    num_ += o.num_ * den_;
  } else if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
  } else {
    MultiPoly g = (den_.is_monomial() && o.den_.is_monomial())
                      ? MultiPoly::term(Monomial::gcd(den_.leading().first, o.den_.leading().first), Scalar(1))
                      : MultiPoly::gcd(den_, o.den_);
    MultiPoly oa = *o.den_.divide_exact(g);
    MultiPoly ta = *den_.divide_exact(g);
    num_ = num_ * oa + o.num_ * ta;
    den_ = den_ * oa;
  }
  cancel();
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Expr& o) {
  ctx_ = merge_context(ctx_, o.ctx_);
  if (num_.is_zero()) return *this;
  if (o.num_.is_zero()) return *this = Expr();
  if (o.is_constant()) {
    num_ *= o.num_.constant_term();
    return *this;
  }
  num_ = num_ * o.num_;
  if (ctx_) num_ = ctx_->reduce(num_);
  if (!o.den_.is_one()) den_ = den_ * o.den_;
  cancel();
  return *this;
}

Expr& Expr::operator/=(const Expr& o) {
  if (o.is_zero()) throw std::domain_error("division by zero expression");
  const AlgebraicContext* ctx = merge_context(ctx_, o.ctx_);
  return *this *= fraction(o.den_, o.num_, ctx);
}

Expr Expr::pow(int e) const {
  if (e < 0) return Expr(1) / pow(-e);
  Expr result(1);
  Expr base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Expr Expr::derivative(SymbolId v) const {
  if (ctx_ && !ctx_->is_base(v))
    throw std::invalid_argument("unknown variable '" + symbols::name(v) + "' for derivative");
  auto d_poly = [&](const MultiPoly& p) -> Expr {
    Expr out(p.derivative(v), ctx_);
    if (!ctx_) return out;
    std::uint32_t deps = p.symbol_mask() & ctx_->dependent_mask();
    int k = ctx_->base_index(v);
    for (SymbolId s = 0; deps; ++s) {
      if (!(deps & (1u << s))) continue;
      deps &= ~(1u << s);
      const auto* g = ctx_->gradient(s);
      if (g->num[k].is_zero()) continue;
      out += Expr(p.derivative(s), ctx_) * fraction(g->num[k], g->den[k], ctx_);
    }
    return out;
  };
  Expr dn = d_poly(num_);
  if (den_.is_one()) return dn;
  Expr dd = d_poly(den_);
  if (dd.is_zero()) return fraction(dn.num_, dn.den_ * den_, ctx_);
  Expr top = dn * Expr(den_, ctx_) - Expr(num_, ctx_) * dd;
  return fraction(top.num_, top.den_ * den_ * den_, ctx_);
}

Expr Expr::substitute(const std::map<SymbolId, Expr>& values, const AlgebraicContext* target) const {
  const AlgebraicContext* ctx = target ? target : ctx_;
  std::map<std::pair<SymbolId, unsigned>, Expr> powers;
  auto power = [&](SymbolId s, unsigned e) -> Expr {
    auto it = powers.find({s, e});
    if (it != powers.end()) return it->second;
    unsigned k = e;
    while (k > 1 && !powers.count({s, k - 1})) --k;
    Expr acc = k == 1 ? values.at(s) : powers.at({s, k - 1}) * values.at(s);
    for (;; ++k) {
      powers.emplace(std::make_pair(s, k), acc);
      if (k == e) return acc;
      acc *= values.at(s);
    }
  };
  auto eval = [&](const MultiPoly& p) {
    std::vector<MultiPoly::Term> plain;
    Expr out;
    out.ctx_ = ctx;
    for (const auto& [m, c] : p.terms()) {
      Monomial rest = m;
      Expr factor(c);
      factor.ctx_ = ctx;
      bool touched = false;
      for (const auto& [s, v] : values) {
        unsigned e = m[s];
        if (e == 0) continue;
        rest.set(s, 0);
        factor *= power(s, e);
        touched = true;
      }
      if (!touched) {
        plain.emplace_back(m, c);
      } else {
        out += factor * Expr(MultiPoly::term(rest, Scalar(1)), ctx);
      }
    }
    return out + Expr(MultiPoly::from_terms(std::move(plain)), ctx);
  };
  Expr n = eval(num_);
  if (den_.is_one()) return n;
  Expr d = eval(den_);
  if (d.is_zero()) throw std::domain_error("substitution produced a zero denominator");
  return n / d;
}

Expr Expr::conj() const { return Expr(num_.conj(), den_, ctx_, 0); }

Expr Expr::real_part() const {
  Expr e(num_.real_part(), den_, ctx_, 0);
  e.cancel();
  return e;
}

Expr Expr::imag_part() const {
  Expr e(num_.imag_part(), den_, ctx_, 0);
  e.cancel();
  return e;
}

std::string Expr::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace opcalc
