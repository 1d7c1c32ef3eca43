#include "opcalc/context.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace opcalc {

AlgebraicContext::Builder& AlgebraicContext::Builder::dependent(
    SymbolId s, std::vector<std::pair<MultiPoly, MultiPoly>> gradient) {
  if (gradient.size() != base_.size())
    throw std::invalid_argument("gradient length must match the base variables");
  Gradient g;
  for (auto& [num, den] : gradient) {
    if (den.is_zero()) throw std::invalid_argument("gradient with zero denominator");
    g.num.push_back(std::move(num));
    g.den.push_back(std::move(den));
  }
  gradients_[s] = std::move(g);
  return *this;
}

AlgebraicContext::Builder& AlgebraicContext::Builder::relation(SymbolId s, MultiPoly square) {
  relations_.push_back({s, std::move(square)});
  return *this;
}

const AlgebraicContext* AlgebraicContext::Builder::build(std::string name) {
  static std::mutex mu;
  static std::deque<AlgebraicContext> registry;

  AlgebraicContext ctx;
  ctx.name_ = std::move(name);
  ctx.base_ = base_;
  ctx.gradients_ = gradients_;
  ctx.relations_ = relations_;
  for (const auto& rel : relations_) ctx.rewritten_mask_ |= 1u << rel.symbol;
  for (const auto& [s, g] : gradients_) {
    if (std::find(base_.begin(), base_.end(), s) != base_.end())
      throw std::invalid_argument("a base variable cannot also be dependent");
    ctx.dependent_mask_ |= 1u << s;
  }
  for (const auto& rel : relations_) {
    if (rel.square.symbol_mask() & ctx.rewritten_mask_)
      throw std::invalid_argument("relation right-hand side mentions a rewritten symbol");
  }
  for (const auto& [s, g] : gradients_) {
    for (const auto& d : g.den)
      if (d.symbol_mask() & ctx.rewritten_mask_)
        throw std::invalid_argument("gradient denominator mentions a rewritten symbol");
  }
  std::lock_guard lock(mu);
  registry.push_back(std::move(ctx));
  return &registry.back();
}

bool AlgebraicContext::is_base(SymbolId s) const { return base_index(s) >= 0; }

int AlgebraicContext::base_index(SymbolId s) const {
  for (std::size_t i = 0; i < base_.size(); ++i)
    if (base_[i] == s) return static_cast<int>(i);
  return -1;
}

const AlgebraicContext::Gradient* AlgebraicContext::gradient(SymbolId s) const {
  auto it = gradients_.find(s);
  return it == gradients_.end() ? nullptr : &it->second;
}

MultiPoly AlgebraicContext::reduce(const MultiPoly& p) const {
  if (relations_.empty()) return p;
  bool needed = false;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& rel : relations_) {
      if (m[rel.symbol] >= 2) {
        needed = true;
        break;
      }
    }
    if (needed) break;
  }
  if (!needed) return p;

  std::vector<std::vector<MultiPoly>> powers(relations_.size());
  auto power = [&](std::size_t k, unsigned e) -> const MultiPoly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= e) cache.push_back(cache.back() * relations_[k].square);
    return cache[e];
  };
  std::vector<MultiPoly::Term> acc;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    MultiPoly factor;
    bool touched = false;
    for (std::size_t k = 0; k < relations_.size(); ++k) {
      unsigned e = m[relations_[k].symbol];
      if (e < 2) continue;
      rest.set(relations_[k].symbol, e % 2);
      factor = touched ? factor * power(k, e / 2) : power(k, e / 2);
      touched = true;
    }
    if (!touched) {
      acc.emplace_back(m, c);
    } else {
      for (const auto& [fm, fc] : factor.terms()) acc.emplace_back(fm * rest, fc * c);
    }
  }
  return MultiPoly::from_terms(std::move(acc));
}

}  // namespace opcalc
