#include "opcalc/multipoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace opcalc {
namespace {

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) { return a.first > b.first; }

// Merge two sorted term lists (descending).
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a,
                                         const std::vector<MultiPoly::Term>& b, bool negate_b) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = a[i].first <=> b[j].first;
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.emplace_back(b[j].first, negate_b ? -b[j].second : b[j].second);
      ++j;
    } else {
      Scalar s = negate_b ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.emplace_back(b[j].first, negate_b ? -b[j].second : b[j].second);
  return out;
}

}  // namespace

MultiPoly::MultiPoly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

MultiPoly MultiPoly::var(SymbolId s, unsigned e) { return term(Monomial::var(s, e), Scalar(1)); }

MultiPoly MultiPoly::term(const Monomial& m, const Scalar& c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_real() const {
  for (const auto& t : terms_)
    if (!t.second.is_real()) return false;
  return true;
}

Scalar MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return Scalar(0);
}

Scalar MultiPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first > key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar(0);
}

unsigned MultiPoly::degree_in(SymbolId s) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first[s]);
  return d;
}

std::uint32_t MultiPoly::symbol_mask() const {
  std::uint32_t mask = 0;
  for (const auto& t : terms_)
    for (SymbolId s = 0; s < kMaxSymbols; ++s)
      if (t.first[s] > 0) mask |= (1u << s);
  return mask;
}

Monomial MultiPoly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_.front().first;
  for (const auto& t : terms_) {
    m = Monomial::gcd(m, t.first);
    if (m.is_one()) break;
  }
  return m;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.second *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && a.terms_[0].first.is_one()) return b * a.terms_[0].second;
  if (b.size() == 1 && b.terms_[0].first.is_one()) return a * b.terms_[0].second;
  const MultiPoly& big = a.size() >= b.size() ? a : b;
  const MultiPoly& small = a.size() >= b.size() ? b : a;
  if (small.size() == 1) {
    MultiPoly out = big.mul_monomial(small.terms_[0].first);
    return out *= small.terms_[0].second;
  }
  if (big.size() * small.size() <= 64) {
    std::vector<MultiPoly::Term> acc;
    acc.reserve(big.size() * small.size());
    for (const auto& s : small.terms_)
      for (const auto& t : big.terms_) acc.emplace_back(t.first * s.first, t.second * s.second);
    return MultiPoly::from_terms(std::move(acc));
  }
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(big.size() * small.size());
  Scalar tmp;
  for (const auto& s : small.terms_) {
    for (const auto& t : big.terms_) {
      tmp = t.second;
      tmp *= s.second;
      auto [it, inserted] = acc.try_emplace(t.first * s.first);
      it->second += tmp;
    }
  }
  MultiPoly out;
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.terms_.emplace_back(m, std::move(c));
  std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
  return out;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m) const {
  MultiPoly p = *this;
  if (m.is_one()) return p;
  for (auto& t : p.terms_) t.first *= m;
  return p;
}

MultiPoly MultiPoly::div_monomial(const Monomial& m) const {
  MultiPoly p = *this;
  if (m.is_one()) return p;
  for (auto& t : p.terms_) t.first = t.first / m;
  return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(SymbolId s) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.first[s];
    if (e == 0) continue;
    Monomial m = t.first;
    m.set(s, e - 1);
    out.emplace_back(m, t.second * Scalar(static_cast<long>(e)));
  }
  // Lowering the s-exponent of every term by one keeps the order intact.
  MultiPoly p;
  p.terms_ = std::move(out);
  return p;
}

MultiPoly MultiPoly::conj() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second = t.second.conj();
  return p;
}

MultiPoly MultiPoly::real_part() const {
  MultiPoly p;
  for (const auto& t : terms_)
    if (sgn(t.second.re()) != 0) p.terms_.emplace_back(t.first, Scalar(t.second.re()));
  return p;
}

MultiPoly MultiPoly::imag_part() const {
  MultiPoly p;
  for (const auto& t : terms_)
    if (sgn(t.second.im()) != 0) p.terms_.emplace_back(t.first, Scalar(t.second.im()));
  return p;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& b) const {
  if (b.is_zero()) throw std::domain_error("MultiPoly: division by zero");
  if (is_zero()) return MultiPoly();
  if (b.is_monomial()) {
    const auto& [bm, bc] = b.terms_[0];
    MultiPoly q;
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!bm.divides(t.first)) return std::nullopt;
      q.terms_.emplace_back(t.first / bm, t.second / bc);
    }
    return q;
  }
  // Quick rejections on per-symbol degrees.
  for (SymbolId s = 0; s < kMaxSymbols; ++s)
    if (b.degree_in(s) > degree_in(s)) return std::nullopt;
  if (b.total_degree() > total_degree()) return std::nullopt;

  std::map<Monomial, Scalar, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace(t.first, t.second);
  const auto& [lm, lc] = b.terms_[0];
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lm.divides(top->first)) return std::nullopt;
    Monomial qm = top->first / lm;
    Scalar qc = top->second / lc;
    rem.erase(top);
    for (std::size_t k = 1; k < b.terms_.size(); ++k) {
      Monomial m = b.terms_[k].first * qm;
      Scalar c = b.terms_[k].second * qc;
      auto [it, inserted] = rem.try_emplace(m);
      it->second -= c;
      if (it->second.is_zero()) rem.erase(it);
    }
    quotient.emplace_back(qm, std::move(qc));
  }
  MultiPoly q;
  q.terms_ = std::move(quotient);
  return q;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(SymbolId s) const {
  std::vector<std::vector<Term>> buckets(degree_in(s) + 1);
  for (const auto& t : terms_) {
    unsigned e = t.first[s];
    Monomial m = t.first;
    m.set(s, 0);
    buckets[e].emplace_back(m, t.second);
  }
  std::vector<MultiPoly> out(buckets.size());
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    // Every term in bucket k loses exactly s^k, which preserves graded-lex order.
    out[k].terms_ = std::move(buckets[k]);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(SymbolId s, const std::vector<MultiPoly>& coeffs) {
  MultiPoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    out += coeffs[k].mul_monomial(Monomial::var(s, static_cast<unsigned>(k)));
  }
  return out;
}

MultiPoly MultiPoly::substitute(SymbolId s, const MultiPoly& value) const {
  return substitute(std::map<SymbolId, MultiPoly>{{s, value}});
}

MultiPoly MultiPoly::substitute(const std::map<SymbolId, MultiPoly>& values) const {
  std::map<std::pair<SymbolId, unsigned>, MultiPoly> powers;
  auto power = [&](SymbolId s, unsigned e) -> const MultiPoly& {
    auto it = powers.find({s, e});
    if (it != powers.end()) return it->second;
    unsigned k = e;
    while (k > 1 && !powers.count({s, k - 1})) --k;
    MultiPoly acc = k == 1 ? values.at(s) : powers.at({s, k - 1}) * values.at(s);
    for (;; ++k) {
      it = powers.emplace(std::make_pair(s, k), acc).first;
      if (k == e) return it->second;
      acc = acc * values.at(s);
    }
  };
  std::vector<Term> plain;
  MultiPoly out;
  for (const auto& t : terms_) {
    Monomial rest = t.first;
    MultiPoly factor(t.second);
    bool touched = false;
    for (const auto& [s, v] : values) {
      unsigned e = t.first[s];
      if (e == 0) continue;
      rest.set(s, 0);
      factor = factor * power(s, e);
      touched = true;
    }
    if (!touched) {
      plain.push_back(t);
    } else {
      out += factor.mul_monomial(rest);
    }
  }
  return out + from_terms(std::move(plain));
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  Scalar lc = terms_[0].second;
  if (lc.is_one()) return *this;
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second /= lc;
  return p;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = c.is_real() && sgn(c.re()) < 0;
    if (neg) cs = (-c).str();
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += cs;
    } else if (cs == "1") {
      s += m.str();
    } else {
      s += cs + "*" + m.str();
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

MultiPoly gcd_core(const MultiPoly& a, const MultiPoly& b);

// Rescales a real polynomial to coprime integer coefficients.
MultiPoly integer_primitive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Integer l(1), g(0);
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re().get_num_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (scale == 1) return p;
  return p * Scalar(scale);
}

MultiPoly content_in(const MultiPoly& p, SymbolId v) {
  MultiPoly g;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : MultiPoly::gcd(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

// Sparse pseudo-remainder of a by b viewed as univariate polynomials in v.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, SymbolId v) {
  std::vector<MultiPoly> ac = a.coefficients_in(v);
  std::vector<MultiPoly> bc = b.coefficients_in(v);
  std::size_t db = bc.size() - 1;
  const MultiPoly& lb = bc[db];
  while (!ac.empty() && ac.size() - 1 >= db) {
    std::size_t da = ac.size() - 1;
    MultiPoly la = ac[da];
    for (auto& c : ac) c = c * lb;
    for (std::size_t j = 0; j <= db; ++j) ac[j + da - db] -= la * bc[j];
    while (!ac.empty() && ac.back().is_zero()) ac.pop_back();
  }
  return MultiPoly::from_coefficients(v, ac);
}

MultiPoly gcd_core(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  std::uint32_t ma = a.symbol_mask();
  std::uint32_t mb = b.symbol_mask();
  // A symbol present in only one argument: the gcd divides each of its coefficients.
  for (int pass = 0; pass < 2; ++pass) {
    std::uint32_t only = pass == 0 ? (ma & ~mb) : (mb & ~ma);
    if (only == 0) continue;
    const MultiPoly& p = pass == 0 ? a : b;
    const MultiPoly& q = pass == 0 ? b : a;
    SymbolId v = 0;
    while (!(only & (1u << v))) ++v;
    MultiPoly g = q;
    for (const auto& c : p.coefficients_in(v)) {
      if (c.is_zero()) continue;
      g = MultiPoly::gcd(g, c);
      if (g.is_constant()) return MultiPoly(1);
    }
    return g;
  }
  SymbolId v = 0;
  unsigned best = ~0u;
  for (SymbolId s = 0; s < kMaxSymbols; ++s) {
    if (!(ma & (1u << s))) continue;
    unsigned d = std::max(a.degree_in(s), b.degree_in(s));
    if (d < best) {
      best = d;
      v = s;
    }
  }
  MultiPoly ca = content_in(a, v);
  MultiPoly cb = content_in(b, v);
  MultiPoly c = MultiPoly::gcd(ca, cb);
  MultiPoly pa = integer_primitive(*a.divide_exact(ca));
  MultiPoly pb = integer_primitive(*b.divide_exact(cb));
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  MultiPoly g;
  while (true) {
    if (pb.degree_in(v) == 0) {
      g = MultiPoly(1);
      break;
    }
    MultiPoly rem = pseudo_remainder(pa, pb, v);
    if (rem.is_zero()) {
      g = pb;
      break;
    }
    pa = std::move(pb);
    pb = integer_primitive(*rem.divide_exact(content_in(rem, v)));
  }
  return (c * g).monic();
}

}  // namespace

MultiPoly MultiPoly::gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (!a.is_real() || !b.is_real()) throw std::invalid_argument("MultiPoly::gcd expects real coefficients");
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial mg = Monomial::gcd(ma, mb);
  MultiPoly g = gcd_core(a.div_monomial(ma), b.div_monomial(mb));
  return g.mul_monomial(mg).monic();
}

}  // namespace opcalc
